#ifndef SPCRADAR_REPORT_HPP
#define SPCRADAR_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace spcr {

struct ChirpEstimateRecord {
    std::size_t chirp_index = 0;
    double f_hz = 0.0;        // rounded to 0.01 Hz
    double theta_rad = 0.0;   // rounded to 1e-6 rad
    double peak_power_db = 0.0;
    bool reused = false; // true when a frozen estimate was applied
};

struct TargetSnrRecord {
    double range_m = 0.0;
    double snr_common_db = 0.0;
    double snr_spc_db = 0.0;
    std::size_t bin_common = 0;
    std::size_t bin_spc = 0;
};

/// Machine-readable summary of one simulate/process run.
struct RunReport {
    std::string config_digest;
    std::uint64_t seed = 0;
    std::size_t n_chirps = 0;
    std::vector<ChirpEstimateRecord> estimates;
    bool has_improvement = false;
    double improvement_max_db = 0.0;
    double improvement_min_db = 0.0;
    double minor_region_mean_db = 0.0;
    std::vector<TargetSnrRecord> target_snr;
    double estimation_ms = 0.0; // summed over performed estimations
    double total_ms = 0.0;
    std::vector<std::string> outputs;
};

void write_report(const RunReport& report, const std::filesystem::path& path);

} // namespace spcr

#endif
