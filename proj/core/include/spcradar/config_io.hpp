#ifndef SPCRADAR_CONFIG_IO_HPP
#define SPCRADAR_CONFIG_IO_HPP

#include "spcradar/scenario.hpp"
#include "spcradar/spc.hpp"
#include "spcradar/spectral.hpp"

#include <filesystem>
#include <string>

namespace spcr {

/// Processing side of a run: estimator, filter, decimation, spectra and
/// analysis settings.
struct ProcessingSettings {
    EstimatorSettings estimator;
    /// Estimate once on the first chirp and reuse it for the rest of the
    /// run (matches single-shot NCO programming); false re-estimates per
    /// chirp.
    bool freeze_estimate = false;
    FilterSpec lpf;
    std::size_t decimate = 4;
    Window spectrum_window = Window::hann;
    ImprovementOptions improvement;
    SnrOptions snr;
};

struct RunConfig {
    ScenarioConfig scenario;
    ProcessingSettings processing;
};

/// Settings sidecar for processing recorded captures: the scenario is
/// unknown, only the plan constants and processing chain are needed.
struct ProcessSettings {
    double f_if_carrier_hz = 2.5e6;
    double alpha_hz_per_s = 150e6 / 880e-6;
    double f_beat_leakage_hz = -1.0; // negative: derive from the estimate
    ProcessingSettings processing;
};

/// Loads a run configuration. PSD entries are either the string "default"
/// or a path (relative to the config file) of a profile CSV. Throws
/// config_error with file/field diagnostics.
RunConfig load_run_config(const std::filesystem::path& path);

void save_run_config(const RunConfig& config, const std::filesystem::path& path);

ProcessSettings load_process_settings(const std::filesystem::path& path);

/// FNV-1a 64 digest of the normalized configuration (profiles inlined),
/// stable for semantically identical configs.
std::string config_digest(const RunConfig& config);

} // namespace spcr

#endif
