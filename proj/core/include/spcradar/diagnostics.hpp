#ifndef SPCRADAR_DIAGNOSTICS_HPP
#define SPCRADAR_DIAGNOSTICS_HPP

#include "spcradar/psd_profile.hpp"

#include <cstdint>
#include <vector>

namespace spcr {

/// Mean voltage-noise magnitude bucketed by the ideal tone's instantaneous
/// phase over [0, 2*pi).
struct PhaseBucketStats {
    std::vector<double> bucket_centers_rad;
    std::vector<double> mean_abs_noise_v;
    std::vector<std::uint64_t> n_samples;
    /// RMS of the synthesized phase noise across all trials. First-order
    /// bucket analysis assumes this stays below ~0.1 rad.
    double rms_phase_rad = 0.0;
};

/// Generates a noisy tone and its ideal twin, subtracts, and buckets the
/// |noise voltage| by the ideal instantaneous phase, averaged over trials.
PhaseBucketStats stationary_point_demo(const PsdProfile& profile, double f0_hz, double amplitude,
                                       double fs_hz, std::size_t n, std::size_t n_trials,
                                       std::uint64_t seed, std::size_t n_buckets = 64);

} // namespace spcr

#endif
