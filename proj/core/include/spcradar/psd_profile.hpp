#ifndef SPCRADAR_PSD_PROFILE_HPP
#define SPCRADAR_PSD_PROFILE_HPP

#include <filesystem>
#include <vector>

namespace spcr {

struct PsdPoint {
    double offset_hz = 0.0;
    double level_dbc_hz = 0.0;
};

/// One-sided phase-noise PSD given as dBc/Hz vs offset frequency.
/// Interpolation is linear in (log10 f, dB); evaluation outside the
/// covered offsets clamps to the nearest endpoint level.
class PsdProfile {
public:
    /// Requires at least two points, strictly increasing positive offsets,
    /// finite levels. Throws invalid_profile_error otherwise.
    explicit PsdProfile(std::vector<PsdPoint> points);

    double level_dbc_hz(double offset_hz) const;

    /// One-sided PSD of the phase process in rad^2/Hz: 2 * 10^(L/10),
    /// counting both sidebands of the dBc/Hz single-sideband level.
    double psd_one_sided(double offset_hz) const;

    const std::vector<PsdPoint>& points() const { return points_; }
    double min_offset_hz() const { return points_.front().offset_hz; }
    double max_offset_hz() const { return points_.back().offset_hz; }

    /// Two-column text file `offset_hz,level_dbc_hz`; header line required,
    /// '#' comments allowed.
    static PsdProfile load_csv(const std::filesystem::path& path);
    void save_csv(const std::filesystem::path& path) const;

    /// Shipped default oscillator profile. A configuration default standing
    /// in for a measured curve, not ground truth.
    static PsdProfile default_profile();

    /// Profile at -300 dBc/Hz everywhere (effectively noiseless).
    static PsdProfile silent();

private:
    std::vector<PsdPoint> points_;
};

} // namespace spcr

#endif
