#include "spcradar/errors.hpp"
#include "spcradar/scenario.hpp"
#include "spcradar/tone.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace spcr;

namespace {

ScenarioConfig reference_scenario() {
    ScenarioConfig cfg;
    cfg.geometry = ChirpGeometry{}; // defaults carry the reference plan
    cfg.leakage.amplitude_v = 1.0;
    cfg.leakage.tau_int_s = 1e4 / cfg.geometry.slope_hz_per_s(); // 10 kHz beat
    cfg.leakage.theta_if_rad = 0.0;
    cfg.noise.enabled = false;
    return cfg;
}

} // namespace

TEST_SUITE_BEGIN("scenario");

TEST_CASE("derive_if_constants: zero delays leave only the constant phases") {
    const auto c = derive_if_constants(14.35e9, 1.70455e11, 0.0, 0.0, 1.0, 0.25);
    CHECK(c.f_beat_hz == 0.0);
    CHECK(c.theta_if_rad == doctest::Approx(0.75));
}

TEST_CASE("derive_if_constants: reference slope and 58.667 ns give 10 kHz") {
    const auto c = derive_if_constants(0.0, 1.70455e11, 58.667e-9, 0.0, 0.0, 0.0);
    CHECK(std::fabs(c.f_beat_hz - 10e3) < 1.0);
}

TEST_CASE("derive_if_constants: phase matches an extended-precision evaluation") {
    const double f_rx = 14.35e9;
    const double alpha = 1.70455e11;
    for (double tau : {100e-9, 58.667e-9, 1.234e-6}) {
        const auto c = derive_if_constants(f_rx, alpha, tau, 0.0, 0.0, 0.0);
        const long double pi = 3.14159265358979323846264338327950288L;
        long double t = static_cast<long double>(f_rx) * tau -
                        static_cast<long double>(alpha) * tau * tau / 2.0L;
        t -= std::floor(t);
        long double want = 2.0L * pi * t;
        if (want > pi) want -= 2.0L * pi;
        CHECK(c.theta_if_rad == doctest::Approx(static_cast<double>(want)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(derive_if_constants(1e9, 1e11, -1e-9, 0.0, 0.0, 0.0), config_error);
}

TEST_CASE("derive_if_constants: target delay adds into both outputs") {
    const double alpha = 1.70455e11;
    const auto leak = derive_if_constants(14.35e9, alpha, 100e-9, 0.0, 0.1, 0.2);
    const auto tgt = derive_if_constants(14.35e9, alpha, 100e-9, 3.3e-6, 0.1, 0.2);
    CHECK(tgt.f_beat_hz == doctest::Approx(alpha * (100e-9 + 3.3e-6)));
    CHECK(tgt.f_beat_hz > leak.f_beat_hz);
}

TEST_CASE("validate_plan: reference geometry passes with zero quarter offset") {
    const auto report = validate_plan(ChirpGeometry{});
    CHECK(report.pass());
    const auto* placement = report.find("carrier_placement");
    REQUIRE(placement != nullptr);
    // carrier exactly on the quarter point: margin equals the tolerance
    CHECK(placement->margin_hz == doctest::Approx(25000.0).epsilon(1e-9));
    const auto* range = report.find("range_capacity");
    REQUIRE(range != nullptr);
    CHECK(range->pass);
}

TEST_CASE("validate_plan: Q = 2 folds the sum terms onto the desired band") {
    ChirpGeometry g;
    g.oversample_q = 2.0;
    g.samples_per_chirp = 4400;
    g.samples_kept = 4096;
    const auto report = validate_plan(g);
    CHECK_FALSE(report.pass());
    const auto* sum = report.find("sum_term_clearance");
    REQUIRE(sum != nullptr);
    CHECK_FALSE(sum->pass);
    CHECK(sum->margin_hz < 0.0);
}

TEST_CASE("validate_plan: undersampling placement on the (4N+1)/4 grid") {
    ChirpGeometry g;
    g.f_if_carrier_hz = 12.5e6; // 5/4 of the oversampled rate
    PlanOptions opts;
    opts.max_undersampling_n = 1;
    const auto report = validate_plan(g, opts);
    const auto* placement = report.find("carrier_placement");
    REQUIRE(placement != nullptr);
    CHECK(placement->pass);
    // without N = 1 allowed, the same carrier fails placement
    const auto strict = validate_plan(g);
    CHECK_FALSE(strict.find("carrier_placement")->pass);
}

TEST_CASE("geometry invariants") {
    ChirpGeometry g;
    g.samples_per_chirp = 1234; // != round(T * Q * F_S)
    CHECK_THROWS_AS(g.validate(), config_error);
    ChirpGeometry g2;
    g2.samples_kept = g2.samples_per_chirp + 1;
    CHECK_THROWS_AS(g2.validate(), config_error);
    ChirpGeometry g3;
    g3.sweep_period_s = -1.0;
    CHECK_THROWS_AS(g3.validate(), config_error);
}

TEST_CASE("frame synthesis: noiseless tone sits at the configured IF beat") {
    auto cfg = reference_scenario();
    const auto frame = synthesize_if_frame(cfg, 0, nullptr);
    REQUIRE(frame.samples.size() == 8192);
    // Dense DTFT peak within the zero-padded-FFT quantization bound.
    const double f_peak =
        oracle::dtft_peak(frame.samples, 0.2495, 0.2525, 1e-9) * frame.fs_hz;
    CHECK(std::fabs(f_peak - 2.51e6) < 4.77);
}

TEST_CASE("frame synthesis: zero amplitudes give the all-zero frame") {
    auto cfg = reference_scenario();
    cfg.leakage.amplitude_v = 0.0;
    const auto frame = synthesize_if_frame(cfg, 0, nullptr);
    for (double v : frame.samples) CHECK(v == 0.0);
}

TEST_CASE("a 1100 m target reaches the desired band edge") {
    const ChirpGeometry g;
    CHECK(target_beat_hz(g, 1100.0) == doctest::Approx(1.25e6).epsilon(1e-9));
}

TEST_CASE("frame determinism per (config, chirp index)") {
    auto cfg = reference_scenario();
    cfg.noise.enabled = true;
    cfg.n_chirps = 2;
    cfg.seed = 99;
    const auto noise = make_phase_noise_set(cfg, 2 * cfg.geometry.samples_per_chirp);
    const auto a = synthesize_if_frame(cfg, 1, &noise);
    const auto b = synthesize_if_frame(cfg, 1, &noise);
    CHECK(a.samples == b.samples);
    const auto c = synthesize_if_frame(cfg, 0, &noise);
    CHECK(a.samples != c.samples);
}

TEST_CASE("noiseless frames match the brute-force evaluation to 1e-12") {
    auto cfg = reference_scenario();
    cfg.leakage.theta_if_rad = 0.7;
    cfg.targets.push_back({0.01, 500.0, 1.3});
    cfg.targets.push_back({0.002, 1000.0, -2.1});
    const auto frame = synthesize_if_frame(cfg, 0, nullptr);
    const auto want = oracle::brute_force_frame(cfg);
    REQUIRE(frame.samples.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(frame.samples[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

TEST_CASE("discard accounting: 8800 generated, 8192 kept") {
    auto cfg = reference_scenario();
    const FrameSynthesizer synth(cfg, nullptr);
    CHECK(synth.raw_chirp(0).size() == 8800);
    CHECK(synth.frame(0).samples.size() == 8192);
    CHECK(cfg.geometry.samples_discarded() == 608);
}

TEST_CASE("range to beat frequency mapping inverts exactly") {
    const ChirpGeometry g;
    const double alpha = g.slope_hz_per_s();
    for (double r : {1.074, 10.0, 500.0, 1100.0}) {
        const double f = target_beat_hz(g, r);
        CHECK(kSpeedOfLight * f / (2.0 * alpha) == doctest::Approx(r).epsilon(1e-12));
    }
}

TEST_CASE("insufficient noise coverage is an error") {
    auto cfg = reference_scenario();
    cfg.noise.enabled = true;
    const auto noise = make_phase_noise_set(cfg, cfg.geometry.samples_per_chirp);
    CHECK_THROWS_AS(synthesize_if_frame(cfg, 1, &noise), insufficient_noise_error);
    PhaseNoiseSet small = noise;
    small.lfm.samples.resize(100);
    small.tx_lo.samples.resize(100);
    small.rx_lo.samples.resize(100);
    CHECK_THROWS_AS(synthesize_if_frame(cfg, 0, &small), insufficient_noise_error);
}

TEST_CASE("LO delays default to half the internal delay") {
    auto cfg = reference_scenario();
    cfg.noise.enabled = true;
    const auto set = make_phase_noise_set(cfg, 8800);
    CHECK(set.tx_lo_delay_s == doctest::Approx(cfg.leakage.tau_int_s / 2.0));
    CHECK(set.rx_lo_delay_s == doctest::Approx(cfg.leakage.tau_int_s / 2.0));
}

TEST_CASE("beat sign flag subtracts the beat from the carrier") {
    auto cfg = reference_scenario();
    cfg.geometry.beat_subtracts = true;
    const auto frame = synthesize_if_frame(cfg, 0, nullptr);
    const double f_peak =
        oracle::dtft_peak(frame.samples, 0.2475, 0.2505, 1e-9) * frame.fs_hz;
    CHECK(std::fabs(f_peak - 2.49e6) < 4.77);
}

TEST_CASE("kept_phase accounts for the discarded head") {
    const ChirpGeometry g;
    const double f = 2.51e6;
    const double theta = 0.7;
    const TonePhase tone(f / g.fs_hz());
    // cos(kept_phase) at kept sample 0 equals the raw chirp at sample 608
    const double direct = tone.cosine(g.samples_discarded(), theta);
    CHECK(std::cos(kept_phase(g, f, theta)) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_SUITE_END();
