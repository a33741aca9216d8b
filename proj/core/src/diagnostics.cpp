#include "spcradar/diagnostics.hpp"

#include "spcradar/errors.hpp"
#include "spcradar/noise.hpp"
#include "spcradar/rng.hpp"
#include "spcradar/tone.hpp"

#include <cmath>
#include <numbers>

namespace spcr {

PhaseBucketStats stationary_point_demo(const PsdProfile& profile, double f0_hz, double amplitude,
                                       double fs_hz, std::size_t n, std::size_t n_trials,
                                       std::uint64_t seed, std::size_t n_buckets) {
    if (!(f0_hz > 0.0) || f0_hz >= fs_hz / 2.0)
        throw invalid_window_error("stationary_point_demo: need 0 < f0 < fs/2");
    if (n_trials == 0 || n_buckets == 0)
        throw invalid_size_error("stationary_point_demo: trials and buckets must be >= 1");

    const double two_pi = 2.0 * std::numbers::pi;
    const TonePhase tone(f0_hz / fs_hz);
    std::vector<double> acc(n_buckets, 0.0);
    std::vector<std::uint64_t> count(n_buckets, 0);
    double phase_sq = 0.0;

    for (std::size_t t = 0; t < n_trials; ++t) {
        const auto phi =
            synthesize_noise(profile, n, fs_hz, derive_seed(seed, SeedStream::trial, t));
        for (std::size_t i = 0; i < n; ++i) {
            const double p = tone.phase(i); // (-pi, pi]
            const double ideal = amplitude * std::cos(p);
            const double noisy = amplitude * std::cos(p + phi.samples[i]);
            const double wrapped = p < 0.0 ? p + two_pi : p;
            auto b = static_cast<std::size_t>(wrapped / two_pi * static_cast<double>(n_buckets));
            if (b >= n_buckets) b = n_buckets - 1;
            acc[b] += std::fabs(noisy - ideal);
            ++count[b];
            phase_sq += phi.samples[i] * phi.samples[i];
        }
    }

    PhaseBucketStats stats;
    stats.bucket_centers_rad.resize(n_buckets);
    stats.mean_abs_noise_v.resize(n_buckets);
    stats.n_samples = count;
    for (std::size_t b = 0; b < n_buckets; ++b) {
        stats.bucket_centers_rad[b] =
            (static_cast<double>(b) + 0.5) * two_pi / static_cast<double>(n_buckets);
        stats.mean_abs_noise_v[b] = count[b] ? acc[b] / static_cast<double>(count[b]) : 0.0;
    }
    stats.rms_phase_rad =
        std::sqrt(phase_sq / (static_cast<double>(n_trials) * static_cast<double>(n)));
    return stats;
}

} // namespace spcr
