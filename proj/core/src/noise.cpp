#include "spcradar/noise.hpp"

#include "spcradar/errors.hpp"
#include "spcradar/fft.hpp"
#include "spcradar/rng.hpp"
#include "spcradar/window.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace spcr {

NoiseRealization synthesize_noise(const PsdProfile& profile, std::size_t n, double fs_hz,
                                  std::uint64_t seed) {
    if (n < 2) throw invalid_size_error("synthesize_noise: n must be >= 2");
    if (!(fs_hz > 0.0)) throw invalid_size_error("synthesize_noise: fs must be > 0");

    const double df = fs_hz / static_cast<double>(n);
    GaussianRng rng(seed);
    std::vector<std::complex<double>> spec(n / 2 + 1, {0.0, 0.0});
    // Bin k carries S_os(f_k) * df of variance after the unnormalized
    // inverse transform: re/im std = sqrt(S_os * df) / 2.
    const std::size_t last = (n % 2 == 0) ? n / 2 - 1 : n / 2;
    for (std::size_t k = 1; k <= last; ++k) {
        double s_os = profile.psd_one_sided(static_cast<double>(k) * df);
        double amp = std::sqrt(s_os * df) * 0.5;
        spec[k] = {amp * rng.normal(), amp * rng.normal()};
    }
    NoiseRealization out;
    out.samples = fft::irfft(spec, n);
    out.fs_hz = fs_hz;
    out.seed = seed;
    return out;
}

NoiseRealization delayed_difference(const NoiseRealization& noise, double delay_s) {
    if (delay_s < 0.0) throw delay_too_large_error("delayed_difference: delay must be >= 0");
    const auto n = noise.samples.size();
    const auto d = static_cast<std::size_t>(std::llround(delay_s * noise.fs_hz));
    if (d > n)
        throw delay_too_large_error("delayed_difference: delay of " + std::to_string(d) +
                                    " samples exceeds realization length " + std::to_string(n));
    NoiseRealization out;
    out.fs_hz = noise.fs_hz;
    out.seed = noise.seed;
    out.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t j = (k >= d) ? k - d : 0;
        out.samples[k] = noise.samples[k] - noise.samples[j];
    }
    out.clamped_head_samples = std::min(d, n);
    return out;
}

NoiseRealization compose_if_noise(const PhaseNoiseSet& set, double tau_int_s, double tau_extra_s) {
    const auto n = set.lfm.samples.size();
    if (set.tx_lo.samples.size() != n || set.rx_lo.samples.size() != n)
        throw invalid_size_error("compose_if_noise: realizations must share length");
    if (set.tx_lo.fs_hz != set.lfm.fs_hz || set.rx_lo.fs_hz != set.lfm.fs_hz)
        throw invalid_size_error("compose_if_noise: realizations must share fs");
    const double fs = set.lfm.fs_hz;
    auto to_samples = [&](double s, const char* what) {
        auto d = std::llround(s * fs);
        if (d < 0 || static_cast<std::size_t>(d) > n)
            throw delay_too_large_error(std::string("compose_if_noise: ") + what +
                                        " delay exceeds realization length");
        return static_cast<std::size_t>(d);
    };
    const std::size_t d_lfm = to_samples(tau_int_s + tau_extra_s, "lfm");
    const std::size_t d_tx = to_samples(set.tx_lo_delay_s + tau_extra_s, "tx_lo");
    const std::size_t d_rx = to_samples(set.rx_lo_delay_s + tau_extra_s, "rx_lo");

    NoiseRealization out;
    out.fs_hz = fs;
    out.seed = set.lfm.seed;
    out.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t j_lfm = (k >= d_lfm) ? k - d_lfm : 0;
        std::size_t j_tx = (k >= d_tx) ? k - d_tx : 0;
        std::size_t j_rx = (k >= d_rx) ? k - d_rx : 0;
        out.samples[k] = set.lfm.samples[k] - set.lfm.samples[j_lfm] - set.tx_lo.samples[j_tx] +
                         set.rx_lo.samples[j_rx];
    }
    out.clamped_head_samples = std::min(std::max({d_lfm, d_tx, d_rx}), n);
    return out;
}

PsdEstimate estimate_psd(const NoiseRealization& noise, std::size_t segment) {
    const auto n = noise.samples.size();
    if (segment < 8 || segment > n)
        throw invalid_segment_error("estimate_psd: segment must be in [8, length]");
    const std::vector<double> w = hann_window(segment, WindowShape::periodic);
    double u = 0.0;
    for (double v : w) u += v * v;

    const std::size_t hop = segment / 2;
    std::vector<double> acc(segment / 2 + 1, 0.0);
    std::vector<double> buf(segment);
    std::size_t count = 0;
    for (std::size_t start = 0; start + segment <= n; start += hop) {
        for (std::size_t i = 0; i < segment; ++i) buf[i] = w[i] * noise.samples[start + i];
        auto spec = fft::rfft(buf, segment);
        for (std::size_t b = 0; b < acc.size(); ++b) acc[b] += std::norm(spec[b]);
        ++count;
    }

    PsdEstimate est;
    est.freq_hz.resize(acc.size());
    est.level_dbc_hz.resize(acc.size());
    const double df = noise.fs_hz / static_cast<double>(segment);
    for (std::size_t b = 0; b < acc.size(); ++b) {
        est.freq_hz[b] = static_cast<double>(b) * df;
        // One-sided PSD (interior bins carry both sides), then to dBc/Hz.
        double scale = (b == 0 || (segment % 2 == 0 && b == segment / 2)) ? 1.0 : 2.0;
        double s_os = scale * acc[b] / (static_cast<double>(count) * noise.fs_hz * u);
        est.level_dbc_hz[b] = std::max(10.0 * std::log10(std::max(s_os / 2.0, 0.0)), -400.0);
    }
    return est;
}

} // namespace spcr
