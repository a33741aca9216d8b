#include "spcradar/spc.hpp"

#include "spcradar/errors.hpp"
#include "spcradar/fft.hpp"
#include "spcradar/tone.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace spcr {

void EstimatorSettings::resolve_search(double fs_hz) {
    if (search_lo_hz < 0.0) search_lo_hz = fs_hz / 4.0 - 100e3;
    if (search_hi_hz < 0.0) search_hi_hz = fs_hz / 4.0 + 100e3;
}

LeakageEstimate estimate_leakage(const IFFrame& frame, const EstimatorSettings& settings) {
    const std::size_t n = frame.samples.size();
    if (settings.nfft < n)
        throw invalid_size_error("estimate_leakage: nfft must be >= frame length");
    EstimatorSettings s = settings;
    s.resolve_search(frame.fs_hz);
    if (!(s.search_lo_hz < s.search_hi_hz) || s.search_hi_hz <= 0.0 ||
        s.search_lo_hz >= frame.fs_hz / 2.0)
        throw invalid_window_error("estimate_leakage: empty search window");

    // Symmetric window keeps the peak-bin phase referenced to the frame
    // center, so the constant-phase readout error is bounded by the
    // frequency quantization alone.
    const auto w = make_window(s.window, n, WindowShape::symmetric);
    std::vector<double> buf(n);
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        buf[i] = w[i] * frame.samples[i];
        wsum += w[i];
    }
    const auto spec = fft::rfft(buf, s.nfft);

    const double bin_hz = frame.fs_hz / static_cast<double>(s.nfft);
    auto lo = static_cast<std::size_t>(std::ceil(std::max(s.search_lo_hz, 0.0) / bin_hz));
    auto hi = static_cast<std::size_t>(std::floor(s.search_hi_hz / bin_hz));
    hi = std::min(hi, spec.size() - 1);
    if (lo > hi) throw invalid_window_error("estimate_leakage: search window clips to nothing");

    std::size_t best = lo;
    double best_pow = -1.0;
    for (std::size_t k = lo; k <= hi; ++k) {
        double p = std::norm(spec[k]);
        if (p > best_pow) { // strict: ties keep the lowest bin
            best_pow = p;
            best = k;
        }
    }
    if (best_pow <= 0.0) throw no_peak_error("estimate_leakage: no spectral peak in window");

    LeakageEstimate est;
    est.peak_bin = best;
    est.nfft_used = s.nfft;
    est.f_if_beat_leakage_hz = bin_hz * static_cast<double>(best);
    est.theta_if_leakage_rad = std::arg(spec[best]);
    const double cg = wsum / 2.0;
    est.peak_power_db = 10.0 * std::log10(best_pow / (cg * cg));
    return est;
}

std::vector<double> make_nco(const NcoParams& params) {
    if (!(params.fs_hz > 0.0)) throw invalid_estimate_error("make_nco: fs must be > 0");
    if (params.frequency_hz < 0.0 || params.frequency_hz >= params.fs_hz / 2.0)
        throw invalid_estimate_error("make_nco: frequency must be in [0, fs/2)");
    const TonePhase tone(params.frequency_hz / params.fs_hz);
    std::vector<double> out(params.length);
    for (std::size_t n = 0; n < params.length; ++n) out[n] = tone.cosine(n, params.phase_rad);
    return out;
}

namespace {

BasebandFrame downconvert(const IFFrame& frame, double f_hz, double theta_rad,
                          const FirFilter& lpf, std::size_t decimate, Method method) {
    const auto nco = make_nco({f_hz, theta_rad, frame.fs_hz, frame.samples.size()});
    std::vector<double> mixed(frame.samples.size());
    for (std::size_t n = 0; n < mixed.size(); ++n) mixed[n] = frame.samples[n] * nco[n];
    BasebandFrame out;
    out.samples = lpf.filter_decimate(mixed, decimate);
    out.fs_hz = frame.fs_hz / static_cast<double>(decimate);
    out.method = method;
    out.group_delay_samples = lpf.group_delay_samples();
    return out;
}

} // namespace

BasebandFrame spc_downconvert(const IFFrame& frame, const LeakageEstimate& estimate,
                              const FirFilter& lpf, std::size_t decimate) {
    return downconvert(frame, estimate.f_if_beat_leakage_hz, estimate.theta_if_leakage_rad, lpf,
                       decimate, Method::spc);
}

BasebandFrame common_downconvert(const IFFrame& frame, double f_if_carrier_hz,
                                 const FirFilter& lpf, std::size_t decimate) {
    return downconvert(frame, f_if_carrier_hz, 0.0, lpf, decimate, Method::common);
}

} // namespace spcr
