#include "spcradar/scenario.hpp"

#include "spcradar/errors.hpp"
#include "spcradar/rng.hpp"
#include "spcradar/tone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace spcr {

void ChirpGeometry::validate() const {
    if (!(sweep_bandwidth_hz > 0.0)) throw config_error("geometry: sweep bandwidth must be > 0");
    if (!(sweep_period_s > 0.0)) throw config_error("geometry: sweep period must be > 0");
    if (!(base_fs_hz > 0.0)) throw config_error("geometry: base sampling frequency must be > 0");
    if (!(oversample_q >= 1.0)) throw config_error("geometry: oversampling factor must be >= 1");
    if (!(f_if_carrier_hz > 0.0)) throw config_error("geometry: IF carrier must be > 0");
    if (samples_kept > samples_per_chirp)
        throw config_error("geometry: samples_kept must be <= samples_per_chirp");
    if (samples_per_chirp == 0) throw config_error("geometry: samples_per_chirp must be > 0");
    const auto expected =
        static_cast<std::size_t>(std::llround(sweep_period_s * fs_hz()));
    if (expected != samples_per_chirp) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "geometry: samples_per_chirp %zu != round(T * Q * F_S) = %zu",
                      samples_per_chirp, expected);
        throw config_error(buf);
    }
}

void ScenarioConfig::validate() const {
    geometry.validate();
    if (!(leakage.amplitude_v > 0.0)) throw config_error("leakage: amplitude must be > 0");
    if (leakage.tau_int_s < 0.0) throw config_error("leakage: tau_int must be >= 0");
    const double half_fs = geometry.base_fs_hz / 2.0;
    for (const auto& t : targets) {
        if (!(t.amplitude_v > 0.0)) throw config_error("target: amplitude must be > 0");
        if (t.range_m < 0.0) throw config_error("target: range must be >= 0");
        if (target_beat_hz(geometry, t.range_m) > half_fs)
            throw config_error("target: beat frequency exceeds the desired digital bandwidth");
    }
    if (n_chirps == 0) throw config_error("n_chirps must be >= 1");
}

IfConstants derive_if_constants(double f_rx_hz, double alpha_hz_per_s, double tau_int_s,
                                double tau_t_s, double theta_s_rad, double theta_r_rad) {
    if (!std::isfinite(f_rx_hz) || !std::isfinite(alpha_hz_per_s))
        throw config_error("derive_if_constants: inputs must be finite");
    if (tau_int_s < 0.0 || tau_t_s < 0.0)
        throw config_error("derive_if_constants: delays must be >= 0");
    const double tau = tau_int_s + tau_t_s;
    IfConstants out;
    out.f_beat_hz = alpha_hz_per_s * tau;
    // theta = theta_S + 2*pi*f_RX*tau - pi*alpha*tau^2 - theta_R.
    // f_RX*tau can be thousands of turns; reduce in turns before scaling.
    double turns = std::remainder(f_rx_hz * tau, 1.0) - alpha_hz_per_s * tau * tau / 2.0;
    out.theta_if_rad =
        wrap_to_pi(2.0 * std::numbers::pi * std::remainder(turns, 1.0) + theta_s_rad - theta_r_rad);
    return out;
}

bool PlanReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const PlanCheck& c) { return c.pass; });
}

const PlanCheck* PlanReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

// Folds a frequency into the unique band [0, fs/2] of a real signal.
double fold(double f, double fs) {
    f = std::fmod(std::fabs(f), fs);
    return (f > fs / 2.0) ? fs - f : f;
}

char* fmt(char (&buf)[192]) { return buf; }

} // namespace

PlanReport validate_plan(const ChirpGeometry& geometry, const PlanOptions& options) {
    geometry.validate();
    PlanReport report;
    const double fs = geometry.fs_hz();
    const double quarter = fs / 4.0;
    const double tol = options.placement_tol_hz >= 0.0 ? options.placement_tol_hz : quarter * 0.01;
    char buf[192];

    // (a) Carrier on the (4N+1)/4 grid of the oversampled rate.
    {
        PlanCheck c;
        c.name = "carrier_placement";
        double best = -1.0;
        int best_n = 0;
        for (int n = 0; n <= options.max_undersampling_n; ++n) {
            double point = fs * (4.0 * n + 1.0) / 4.0;
            double off = std::fabs(geometry.f_if_carrier_hz - point);
            if (best < 0.0 || off < best) {
                best = off;
                best_n = n;
            }
        }
        c.pass = best <= tol;
        c.margin_hz = tol - best;
        std::snprintf(fmt(buf), sizeof(buf),
                      "carrier offset from (4N+1)/4 grid point (N=%d) is %.3f Hz, tolerance %.3f Hz",
                      best_n, best, tol);
        c.detail = buf;
        report.checks.push_back(c);
    }

    // (b) Sum terms around the center of the oversampled domain must clear
    // the desired band once folded.
    {
        PlanCheck c;
        c.name = "sum_term_clearance";
        const double desired_bw = geometry.base_fs_hz / 2.0;
        const double lo = 2.0 * geometry.f_if_carrier_hz;
        const double hi = lo + desired_bw;
        // Conservative folded lower edge of the sum band.
        double folded_lo = std::min(fold(lo, fs), fold(hi, fs));
        const int steps = 32;
        for (int i = 0; i <= steps; ++i) {
            double f = lo + (hi - lo) * static_cast<double>(i) / steps;
            folded_lo = std::min(folded_lo, fold(f, fs));
        }
        c.margin_hz = folded_lo - desired_bw;
        c.pass = c.margin_hz >= options.min_sum_margin_hz;
        std::snprintf(fmt(buf), sizeof(buf),
                      "sum band [%.0f, %.0f] Hz folds to >= %.0f Hz; clearance above the "
                      "%.0f Hz desired band is %.0f Hz",
                      lo, hi, folded_lo, desired_bw, c.margin_hz);
        c.detail = buf;
        report.checks.push_back(c);
    }

    // (c) Desired digital bandwidth covers the configured maximum range.
    {
        PlanCheck c;
        c.name = "range_capacity";
        const double desired_bw = geometry.base_fs_hz / 2.0;
        const double f_max = target_beat_hz(geometry, options.max_range_m);
        c.margin_hz = desired_bw - f_max;
        c.pass = c.margin_hz >= -1e-6 * desired_bw;
        std::snprintf(fmt(buf), sizeof(buf),
                      "max range %.0f m needs %.1f Hz of the %.0f Hz desired band (margin %.1f Hz)",
                      options.max_range_m, f_max, desired_bw, c.margin_hz);
        c.detail = buf;
        report.checks.push_back(c);
    }
    return report;
}

double if_beat_leakage_hz(const ScenarioConfig& config) {
    const double beat = config.geometry.slope_hz_per_s() * config.leakage.tau_int_s;
    return config.geometry.beat_subtracts ? config.geometry.f_if_carrier_hz - beat
                                          : config.geometry.f_if_carrier_hz + beat;
}

double target_beat_hz(const ChirpGeometry& geometry, double range_m) {
    return geometry.slope_hz_per_s() * (2.0 * range_m / kSpeedOfLight);
}

double kept_phase(const ChirpGeometry& geometry, double f_hz, double theta_rad) {
    const TonePhase tone(f_hz / geometry.fs_hz());
    return wrap_to_pi(tone.phase(geometry.samples_discarded()) + theta_rad);
}

PhaseNoiseSet make_phase_noise_set(const ScenarioConfig& config, std::size_t n_samples) {
    const double fs = config.geometry.fs_hz();
    PhaseNoiseSet set;
    set.lfm = synthesize_noise(config.noise.lfm, n_samples, fs,
                               derive_seed(config.seed, SeedStream::lfm));
    set.tx_lo = synthesize_noise(config.noise.tx_lo, n_samples, fs,
                                 derive_seed(config.seed, SeedStream::tx_lo));
    set.rx_lo = synthesize_noise(config.noise.rx_lo, n_samples, fs,
                                 derive_seed(config.seed, SeedStream::rx_lo));
    const double half_int = config.leakage.tau_int_s / 2.0;
    set.tx_lo_delay_s = config.noise.tx_lo_delay_s >= 0.0 ? config.noise.tx_lo_delay_s : half_int;
    set.rx_lo_delay_s = config.noise.rx_lo_delay_s >= 0.0 ? config.noise.rx_lo_delay_s : half_int;
    return set;
}

FrameSynthesizer::FrameSynthesizer(const ScenarioConfig& config, const PhaseNoiseSet* noise)
    : config_(config) {
    config_.validate();
    if (noise != nullptr) {
        noise_len_ = noise->lfm.samples.size();
        if (noise_len_ < config_.geometry.samples_per_chirp)
            throw insufficient_noise_error(
                "frame synthesis: noise realizations shorter than one chirp");
        leakage_phase_noise_ = compose_if_noise(*noise, config_.leakage.tau_int_s, 0.0).samples;
        target_phase_noise_.reserve(config_.targets.size());
        for (const auto& t : config_.targets) {
            const double tau_t = 2.0 * t.range_m / kSpeedOfLight;
            target_phase_noise_.push_back(
                compose_if_noise(*noise, config_.leakage.tau_int_s, tau_t).samples);
        }
    }
}

std::vector<double> FrameSynthesizer::raw_chirp(std::size_t chirp_index) const {
    const auto& g = config_.geometry;
    const std::size_t n_gen = g.samples_per_chirp;
    const std::size_t offset = chirp_index * n_gen;
    const bool has_noise = !leakage_phase_noise_.empty();
    if (has_noise && offset + n_gen > noise_len_)
        throw insufficient_noise_error("frame synthesis: noise realizations do not cover chirp " +
                                       std::to_string(chirp_index));

    const double fs = g.fs_hz();
    const double alpha = g.slope_hz_per_s();
    const double f_leak = g.beat_subtracts ? g.f_if_carrier_hz - alpha * config_.leakage.tau_int_s
                                           : g.f_if_carrier_hz + alpha * config_.leakage.tau_int_s;

    struct Component {
        TonePhase tone;
        double amplitude;
        double theta;
        const std::vector<double>* phase_noise;
    };
    std::vector<Component> comps;
    comps.push_back({TonePhase(f_leak / fs), config_.leakage.amplitude_v,
                     config_.leakage.theta_if_rad,
                     has_noise ? &leakage_phase_noise_ : nullptr});
    for (std::size_t k = 0; k < config_.targets.size(); ++k) {
        const auto& t = config_.targets[k];
        const double f_k = f_leak + target_beat_hz(g, t.range_m);
        comps.push_back({TonePhase(f_k / fs), t.amplitude_v, t.theta_if_rad,
                         has_noise ? &target_phase_noise_[k] : nullptr});
    }

    std::vector<double> gen(n_gen, 0.0);
    for (const auto& c : comps) {
        if (c.phase_noise != nullptr) {
            const double* pn = c.phase_noise->data() + offset;
            for (std::size_t n = 0; n < n_gen; ++n)
                gen[n] += c.amplitude * std::cos(c.tone.phase(n) + c.theta + pn[n]);
        } else {
            for (std::size_t n = 0; n < n_gen; ++n)
                gen[n] += c.amplitude * c.tone.cosine(n, c.theta);
        }
    }

    if (config_.noise.awgn.enabled) {
        GaussianRng rng(derive_seed(config_.seed, SeedStream::awgn, chirp_index));
        const double sigma =
            std::sqrt(std::pow(10.0, config_.noise.awgn.level_db_hz / 10.0) * fs / 2.0);
        for (auto& v : gen) v += sigma * rng.normal();
    }
    return gen;
}

IFFrame FrameSynthesizer::frame(std::size_t chirp_index) const {
    const auto& g = config_.geometry;
    const auto gen = raw_chirp(chirp_index);
    IFFrame frame;
    frame.fs_hz = g.fs_hz();
    frame.chirp_index = chirp_index;
    frame.geometry = g;
    frame.samples.assign(gen.begin() + static_cast<std::ptrdiff_t>(g.samples_discarded()),
                         gen.end());
    return frame;
}

IFFrame synthesize_if_frame(const ScenarioConfig& config, std::size_t chirp_index,
                            const PhaseNoiseSet* noise) {
    return FrameSynthesizer(config, noise).frame(chirp_index);
}

} // namespace spcr
