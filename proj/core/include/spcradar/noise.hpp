#ifndef SPCRADAR_NOISE_HPP
#define SPCRADAR_NOISE_HPP

#include "spcradar/psd_profile.hpp"

#include <cstdint>
#include <vector>

namespace spcr {

/// One realization of a phase-noise process, in radians.
struct NoiseRealization {
    std::vector<double> samples;
    double fs_hz = 0.0;
    std::uint64_t seed = 0;
    /// For delayed outputs: number of head samples whose delayed index fell
    /// before the start and was computed against sample 0.
    std::size_t clamped_head_samples = 0;
};

/// The three independent oscillator noise processes entering the IF beat
/// signal, plus the internal delays applied to the LO terms.
struct PhaseNoiseSet {
    NoiseRealization lfm;   // reference chirp oscillator
    NoiseRealization tx_lo; // TX RF-stage LO
    NoiseRealization rx_lo; // RX RF-stage LO
    double tx_lo_delay_s = 0.0;
    double rx_lo_delay_s = 0.0;
};

/// Colored Gaussian phase noise whose one-sided PSD matches `profile`.
/// Frequency-domain shaping: independent complex Gaussian per positive
/// bin scaled to the target PSD, Hermitian inverse transform. DC and
/// Nyquist bins are zero (zero-mean process). Deterministic per
/// (profile, n, fs, seed).
NoiseRealization synthesize_noise(const PsdProfile& profile, std::size_t n, double fs_hz,
                                  std::uint64_t seed);

/// phi(t) - phi(t - delay), delay rounded to whole samples. Head samples
/// where the delayed index would be negative difference against sample 0;
/// their count is recorded in clamped_head_samples.
NoiseRealization delayed_difference(const NoiseRealization& noise, double delay_s);

/// IF-domain composite phase noise:
///   phi_lfm(t) - phi_lfm(t - tau_int - tau_extra)
///   - phi_tx_lo(t - tx_lo_delay - tau_extra)
///   + phi_rx_lo(t - rx_lo_delay - tau_extra).
/// tau_extra = 0 gives the leakage composition; tau_extra = round-trip
/// delay gives a target's.
NoiseRealization compose_if_noise(const PhaseNoiseSet& set, double tau_int_s, double tau_extra_s);

/// Averaged-periodogram PSD estimate: Hann-windowed segments, 50% overlap.
struct PsdEstimate {
    std::vector<double> freq_hz;
    std::vector<double> level_dbc_hz; // floored at -400
};

PsdEstimate estimate_psd(const NoiseRealization& noise, std::size_t segment);

} // namespace spcr

#endif
