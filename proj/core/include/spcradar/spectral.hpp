#ifndef SPCRADAR_SPECTRAL_HPP
#define SPCRADAR_SPECTRAL_HPP

#include "spcradar/spc.hpp"
#include "spcradar/window.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace spcr {

/// Calibrated one-sided power spectrum. Power is dB relative to a
/// unit-amplitude bin-centered tone; floored at -400 dB.
struct SpectrumResult {
    std::vector<double> power_db;
    std::vector<double> range_m; // empty until bins_to_range
    double bin_hz = 0.0;
    std::size_t n_averaged = 1;
    Method method = Method::common;
    double f_shift_applied_hz = 0.0;
};

/// Windowed magnitude-squared spectrum normalized by the coherent gain
/// (sum(w)/2)^2, so a bin-centered tone of amplitude A reads 20*log10(A).
SpectrumResult power_spectrum(const BasebandFrame& frame, Window window, std::size_t nfft);

/// Linear-power mean per bin. Axes and method tags must match.
SpectrumResult average_spectra(std::span<const SpectrumResult> spectra);

/// Fills the range axis: R = c * f / (2 * alpha).
SpectrumResult bins_to_range(SpectrumResult spectrum, double alpha_hz_per_s);

struct ImprovementOptions {
    std::size_t guard_bins = 5;      // excluded around the residual leakage
    std::size_t fit_window_bins = 51;
    double range_min_m = 10.0;
    double range_max_m = 1100.0;
    double alpha_hz_per_s = 150e6 / 880e-6;
    std::size_t minor_region_lo_bin = 6; // reported, not excluded
    std::size_t minor_region_hi_bin = 20;
};

/// Common-minus-SPC noise-floor difference after aligning the common
/// spectrum down by the leakage beat frequency, with a moving-median plus
/// cubic-smoothing fit overlaid.
struct ImprovementCurve {
    std::vector<double> range_m;
    std::vector<double> delta_db;
    std::vector<double> fitted_delta_db; // NaN on excluded bins
    std::vector<bool> excluded;
    std::size_t shift_bins = 0;
    double fit_max_db = 0.0; // over the configured range domain
    double fit_min_db = 0.0;
    double minor_region_mean_db = 0.0;
};

ImprovementCurve improvement_curve(const SpectrumResult& common, const SpectrumResult& spc,
                                   double f_beat_leakage_hz, const ImprovementOptions& options);

struct SnrOptions {
    std::size_t annulus_bins = 50; // each side
    std::size_t peak_guard_bins = 3;
};

/// Peak power minus the median power of the surrounding annulus.
double measure_snr(const SpectrumResult& spectrum, std::size_t peak_bin,
                   const SnrOptions& options = {});

/// Bin index of the largest power within [f_lo, f_hi].
std::size_t find_peak_bin(const SpectrumResult& spectrum, double f_lo_hz, double f_hi_hz);

} // namespace spcr

#endif
