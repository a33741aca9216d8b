#include "spcradar/fft.hpp"

#include "spcradar/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>

namespace spcr::fft {

namespace {

// FFTW planning is not thread-safe; executing a cached plan on fresh
// arrays is. Plans are created once per size under a lock and reused
// via the new-array execute interface. All buffers come from
// fftw_malloc so the alignment seen at planning time holds.

std::mutex g_plan_mutex;

struct RealBuf {
    double* p = nullptr;
    explicit RealBuf(std::size_t n) : p(static_cast<double*>(fftw_malloc(sizeof(double) * n))) {}
    ~RealBuf() { fftw_free(p); }
    RealBuf(const RealBuf&) = delete;
    RealBuf& operator=(const RealBuf&) = delete;
};

struct ComplexBuf {
    fftw_complex* p = nullptr;
    explicit ComplexBuf(std::size_t n)
        : p(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {}
    ~ComplexBuf() { fftw_free(p); }
    ComplexBuf(const ComplexBuf&) = delete;
    ComplexBuf& operator=(const ComplexBuf&) = delete;
};

fftw_plan r2c_plan(std::size_t n) {
    static std::map<std::size_t, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    RealBuf in(n);
    ComplexBuf out(n / 2 + 1);
    fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.p, out.p, FFTW_ESTIMATE);
    plans.emplace(n, p);
    return p;
}

fftw_plan c2r_plan(std::size_t n) {
    static std::map<std::size_t, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    ComplexBuf in(n / 2 + 1);
    RealBuf out(n);
    fftw_plan p = fftw_plan_dft_c2r_1d(static_cast<int>(n), in.p, out.p, FFTW_ESTIMATE);
    plans.emplace(n, p);
    return p;
}

} // namespace

std::vector<std::complex<double>> rfft(std::span<const double> in, std::size_t nfft) {
    if (nfft < in.size() || nfft < 2)
        throw invalid_size_error("rfft: nfft must be >= input length and >= 2");
    fftw_plan plan = r2c_plan(nfft);
    RealBuf tin(nfft);
    ComplexBuf tout(nfft / 2 + 1);
    std::memcpy(tin.p, in.data(), in.size() * sizeof(double));
    std::fill(tin.p + in.size(), tin.p + nfft, 0.0);
    fftw_execute_dft_r2c(plan, tin.p, tout.p);
    std::vector<std::complex<double>> out(nfft / 2 + 1);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = {tout.p[k][0], tout.p[k][1]};
    return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> spec, std::size_t n) {
    if (n < 2 || spec.size() != n / 2 + 1)
        throw invalid_size_error("irfft: spectrum size must equal n/2 + 1");
    fftw_plan plan = c2r_plan(n);
    ComplexBuf tin(n / 2 + 1);
    RealBuf tout(n);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        tin.p[k][0] = spec[k].real();
        tin.p[k][1] = spec[k].imag();
    }
    fftw_execute_dft_c2r(plan, tin.p, tout.p);
    return std::vector<double>(tout.p, tout.p + n);
}

} // namespace spcr::fft
