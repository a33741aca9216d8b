#include "spcradar/report.hpp"

#include "spcradar/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

namespace spcr {

using nlohmann::json;

void write_report(const RunReport& report, const std::filesystem::path& path) {
    json j;
    j["config_digest"] = report.config_digest;
    j["seed"] = report.seed;
    j["n_chirps"] = report.n_chirps;
    j["estimates"] = json::array();
    for (const auto& e : report.estimates) {
        j["estimates"].push_back({{"chirp", e.chirp_index},
                                  {"f_hz", std::round(e.f_hz * 100.0) / 100.0},
                                  {"theta_rad", std::round(e.theta_rad * 1e6) / 1e6},
                                  {"peak_power_db", std::round(e.peak_power_db * 1e3) / 1e3},
                                  {"reused", e.reused}});
    }
    if (report.has_improvement) {
        j["improvement"] = {{"max_db", report.improvement_max_db},
                            {"min_db", report.improvement_min_db},
                            {"minor_region_mean_db", report.minor_region_mean_db}};
    }
    j["target_snr"] = json::array();
    for (const auto& t : report.target_snr) {
        j["target_snr"].push_back({{"range_m", t.range_m},
                                   {"snr_common_db", t.snr_common_db},
                                   {"snr_spc_db", t.snr_spc_db},
                                   {"bin_common", t.bin_common},
                                   {"bin_spc", t.bin_spc}});
    }
    j["timing_ms"] = {{"estimation", report.estimation_ms}, {"total", report.total_ms}};
    j["outputs"] = report.outputs;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot write report: " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace spcr
