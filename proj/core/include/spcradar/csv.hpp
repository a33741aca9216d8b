#ifndef SPCRADAR_CSV_HPP
#define SPCRADAR_CSV_HPP

#include "spcradar/diagnostics.hpp"
#include "spcradar/spectral.hpp"

#include <filesystem>
#include <string>

namespace spcr {

/// Shortest round-trippable decimal form; '.' decimal separator.
std::string format_double(double v);

/// `bin_hz,range_m,power_db`, one row per bin, '\n' line endings.
void write_spectrum_csv(const SpectrumResult& spectrum, const std::filesystem::path& path);

/// `range_m,delta_db,fitted_delta_db,excluded`; excluded bins carry an
/// empty fitted field and flag 1.
void write_improvement_csv(const ImprovementCurve& curve, const std::filesystem::path& path);

/// `bucket_center_rad,mean_abs_noise_v,n`.
void write_buckets_csv(const PhaseBucketStats& stats, const std::filesystem::path& path);

} // namespace spcr

#endif
