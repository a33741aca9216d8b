#ifndef SPCRADAR_SCENARIO_HPP
#define SPCRADAR_SCENARIO_HPP

#include "spcradar/noise.hpp"
#include "spcradar/psd_profile.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spcr {

/// Propagation speed used for the range <-> beat-frequency mapping
/// (radar round-trip convention).
inline constexpr double kSpeedOfLight = 3.0e8;

struct ChirpGeometry {
    double sweep_bandwidth_hz = 150e6;
    double sweep_period_s = 880e-6;
    double f_if_carrier_hz = 2.5e6;
    double base_fs_hz = 2.5e6;  // minimum available sampling frequency
    double oversample_q = 4.0;  // positive rational >= 1
    std::size_t samples_per_chirp = 8800;
    std::size_t samples_kept = 8192;
    /// Set when the TX start frequency is below RX: the beat frequency is
    /// subtracted from the IF carrier instead of added.
    bool beat_subtracts = false;

    double slope_hz_per_s() const { return sweep_bandwidth_hz / sweep_period_s; }
    double fs_hz() const { return oversample_q * base_fs_hz; }
    std::size_t samples_discarded() const { return samples_per_chirp - samples_kept; }

    /// Throws config_error when invariants are violated.
    void validate() const;
};

struct LeakageSpec {
    double amplitude_v = 1.0; // composite IF amplitude
    double tau_int_s = 0.0;
    double theta_if_rad = 0.0;
};

struct TargetSpec {
    double amplitude_v = 0.0;
    double range_m = 0.0;
    double theta_if_rad = 0.0;
};

struct AwgnSpec {
    bool enabled = false;
    double level_db_hz = -300.0; // one-sided PSD, dB(V^2/Hz)
};

struct NoiseSpec {
    bool enabled = false;
    PsdProfile lfm = PsdProfile::default_profile();
    PsdProfile tx_lo = PsdProfile::default_profile();
    PsdProfile rx_lo = PsdProfile::default_profile();
    /// LO-noise delays entering the composite. Default: tau_int / 2 each,
    /// applied at config load when left negative.
    double tx_lo_delay_s = -1.0;
    double rx_lo_delay_s = -1.0;
    AwgnSpec awgn;
};

/// RF-stage constants, used only by derive_if_constants.
struct RfConstants {
    double f_rx_hz = 0.0;
    double theta_s_rad = 0.0;
    double theta_r_rad = 0.0;
};

struct ScenarioConfig {
    ChirpGeometry geometry;
    LeakageSpec leakage;
    std::vector<TargetSpec> targets;
    NoiseSpec noise;
    std::optional<RfConstants> rf;
    std::size_t n_chirps = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

/// One chirp's oversampled real-valued IF samples after discarding the
/// early part. Sample index 0 is the first kept sample.
struct IFFrame {
    std::vector<double> samples;
    double fs_hz = 0.0;
    std::size_t chirp_index = 0;
    ChirpGeometry geometry;
};

struct IfConstants {
    double f_beat_hz = 0.0;
    double theta_if_rad = 0.0; // wrapped to (-pi, pi]
};

/// Beat frequency and constant phase of the IF beat signal for total delay
/// tau_int + tau_t (tau_t = 0 for the leakage).
IfConstants derive_if_constants(double f_rx_hz, double alpha_hz_per_s, double tau_int_s,
                                double tau_t_s, double theta_s_rad, double theta_r_rad);

struct PlanCheck {
    std::string name;
    bool pass = false;
    double margin_hz = 0.0;
    std::string detail;
};

struct PlanReport {
    std::vector<PlanCheck> checks;
    bool pass() const;
    const PlanCheck* find(const std::string& name) const;
};

struct PlanOptions {
    /// Tolerance on the IF-carrier placement; negative selects 1% of the
    /// quarter-rate point.
    double placement_tol_hz = -1.0;
    /// Largest undersampling index N considered for the (4N+1)/4 grid.
    int max_undersampling_n = 0;
    double max_range_m = 1100.0;
    /// Required clearance between the folded sum-term band and the desired
    /// digital band.
    double min_sum_margin_hz = 0.0;
};

/// Frequency-plan checks: carrier placement on the (4N+1)/4 grid, folded
/// sum-term clearance, and range capacity of the desired digital band.
/// Failures are report entries, never exceptions.
PlanReport validate_plan(const ChirpGeometry& geometry, const PlanOptions& options = {});

/// The IF beat frequency of the dominant leakage for this scenario.
double if_beat_leakage_hz(const ScenarioConfig& config);

/// Beat frequency of a target at the given range (relative to the leakage).
double target_beat_hz(const ChirpGeometry& geometry, double range_m);

/// Constant phase a tone (f_hz, theta at chirp start) exhibits at the first
/// kept sample, i.e. in the frame clock used by estimation and NCOs.
double kept_phase(const ChirpGeometry& geometry, double f_hz, double theta_rad);

/// Phase-noise streams covering n_samples, continuous across chirps.
/// LO delays resolve to tau_int/2 when the spec left them at default.
PhaseNoiseSet make_phase_noise_set(const ScenarioConfig& config, std::size_t n_samples);

/// Synthesizes the chirps of a scenario. Composes the per-component IF
/// phase noise once, then emits frames per chirp index.
class FrameSynthesizer {
public:
    /// noise may be null (noiseless). Realizations must cover
    /// (chirp_index + 1) * samples_per_chirp for every frame requested.
    FrameSynthesizer(const ScenarioConfig& config, const PhaseNoiseSet* noise);

    /// All samples_per_chirp samples of a chirp, before the early part is
    /// discarded. This is what a recorded capture stores.
    std::vector<double> raw_chirp(std::size_t chirp_index) const;

    IFFrame frame(std::size_t chirp_index) const;

    const ScenarioConfig& config() const { return config_; }

private:
    ScenarioConfig config_;
    std::size_t noise_len_ = 0;
    std::vector<double> leakage_phase_noise_;
    std::vector<std::vector<double>> target_phase_noise_;
};

/// One-shot frame synthesis per the scenario. Deterministic per
/// (config, chirp_index).
IFFrame synthesize_if_frame(const ScenarioConfig& config, std::size_t chirp_index,
                            const PhaseNoiseSet* noise);

} // namespace spcr

#endif
