#ifndef SPCRADAR_RUNNER_HPP
#define SPCRADAR_RUNNER_HPP

#include "spcradar/capture.hpp"
#include "spcradar/config_io.hpp"
#include "spcradar/report.hpp"

#include <filesystem>
#include <optional>

namespace spcr {

struct SimulateOptions {
    std::filesystem::path out_dir;
    int jobs = 1;
    std::optional<std::uint64_t> seed_override;
    std::optional<bool> freeze_override;
    bool dump_frames = false;
    /// Proceed despite a failing frequency-plan check.
    bool force_plan = false;
};

/// Full batch pipeline: synthesize n_chirps frames, process each through
/// the common and SPC paths, write spectra/improvement CSVs and the run
/// report. Returns the report. Throws plan_error when the frequency plan
/// fails and force_plan is unset.
RunReport run_simulate(const RunConfig& config, const SimulateOptions& options);

struct ProcessOptions {
    std::filesystem::path out_dir;
    int jobs = 1;
};

/// Offline processing of a recorded IF capture with its sidecar header.
RunReport run_process(const std::filesystem::path& capture_path,
                      const std::filesystem::path& header_path, const ProcessSettings& settings,
                      const ProcessOptions& options);

} // namespace spcr

#endif
