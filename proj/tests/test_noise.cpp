#include "spcradar/errors.hpp"
#include "spcradar/noise.hpp"
#include "spcradar/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace spcr;

namespace {

double rms(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc / static_cast<double>(v.size()));
}

// Averaged-psd level at the bin nearest f.
double psd_level_at(const PsdEstimate& est, double f_hz) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < est.freq_hz.size(); ++i)
        if (std::fabs(est.freq_hz[i] - f_hz) < std::fabs(est.freq_hz[best] - f_hz)) best = i;
    return est.level_dbc_hz[best];
}

} // namespace

TEST_SUITE_BEGIN("noise");

TEST_CASE("vanishing PSD forces vanishing variance") {
    const auto n = synthesize_noise(PsdProfile::silent(), 4096, 10e6, 1);
    CHECK(rms(n.samples) < 1e-6);
}

TEST_CASE("determinism: same seed is bit-identical, new seed is not") {
    const auto profile = PsdProfile::default_profile();
    const auto a = synthesize_noise(profile, 4096, 10e6, 42);
    const auto b = synthesize_noise(profile, 4096, 10e6, 42);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i] == b.samples[i]);
    const auto c = synthesize_noise(profile, 4096, 10e6, 43);
    CHECK(a.samples != c.samples);
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(synthesize_noise(PsdProfile::silent(), 1, 10e6, 1), invalid_size_error);
    CHECK_THROWS_AS(synthesize_noise(PsdProfile::silent(), 64, 0.0, 1), invalid_size_error);
}

TEST_CASE("variance matches the PSD integral (Parseval oracle, 200 seeds)") {
    const PsdProfile flat({{1e3, -100.0}, {5e6, -100.0}});
    const std::size_t n = 1 << 16;
    const double fs = 10e6;
    double acc = 0.0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s)
        acc += oracle::variance(synthesize_noise(flat, n, fs, 1000 + s).samples);
    acc /= seeds;
    // One-sided band, both sidebands counted: 2 * integral of 10^(L/10).
    const double expected = oracle::psd_integral(flat, fs / n, fs / 2.0);
    CHECK(acc == doctest::Approx(expected).epsilon(0.10));
}

TEST_CASE("delayed_difference: zero delay cancels identically") {
    const auto n = synthesize_noise(PsdProfile::default_profile(), 2048, 10e6, 7);
    const auto d = delayed_difference(n, 0.0);
    CHECK(d.clamped_head_samples == 0);
    for (double v : d.samples) CHECK(v == 0.0);
}

TEST_CASE("delayed_difference: 58.7 ns at 10 MHz rounds to one sample") {
    const auto n = synthesize_noise(PsdProfile::default_profile(), 2048, 10e6, 7);
    const auto d = delayed_difference(n, 58.7e-9);
    CHECK(d.clamped_head_samples == 1);
    CHECK(d.samples[0] == 0.0); // differenced against sample 0
    for (std::size_t k = 1; k < d.samples.size(); ++k)
        CHECK(d.samples[k] == doctest::Approx(n.samples[k] - n.samples[k - 1]).epsilon(1e-15));
}

TEST_CASE("delayed_difference: delay beyond the realization is an error") {
    const auto n = synthesize_noise(PsdProfile::default_profile(), 1024, 10e6, 7);
    CHECK_THROWS_AS(delayed_difference(n, 1.0), delay_too_large_error);
    CHECK_THROWS_AS(delayed_difference(n, -1e-9), delay_too_large_error);
}

TEST_CASE("DPN transfer function: 4 sin^2(pi f tau) within 3 dB") {
    const PsdProfile flat({{1e3, -100.0}, {5e6, -100.0}});
    const double fs = 10e6;
    const std::size_t n = 1 << 14;
    const double tau = 3.0 / fs; // keeps the first transfer notch above fs/4
    const std::size_t segment = 2048;

    std::vector<double> acc_in, acc_out;
    const int reals = 200;
    PsdEstimate est_in, est_out;
    for (int s = 0; s < reals; ++s) {
        const auto x = synthesize_noise(flat, n, fs, 5000 + s);
        const auto y = delayed_difference(x, tau);
        est_in = estimate_psd(x, segment);
        est_out = estimate_psd(y, segment);
        if (acc_in.empty()) {
            acc_in.assign(est_in.level_dbc_hz.size(), 0.0);
            acc_out.assign(est_out.level_dbc_hz.size(), 0.0);
        }
        for (std::size_t b = 0; b < acc_in.size(); ++b) {
            acc_in[b] += std::pow(10.0, est_in.level_dbc_hz[b] / 10.0);
            acc_out[b] += std::pow(10.0, est_out.level_dbc_hz[b] / 10.0);
        }
    }

    // Band check over [1/(20 tau), fs/4]; the f = 1/(10 tau) point is inside.
    const double f_band_lo = 1.0 / (20.0 * tau);
    std::size_t checked = 0;
    for (std::size_t b = 1; b + 1 < acc_in.size(); ++b) {
        const double f = est_in.freq_hz[b];
        if (f < f_band_lo || f > fs / 4.0) continue;
        const double ratio_db = 10.0 * std::log10(acc_out[b] / acc_in[b]);
        const double h = 4.0 * std::pow(std::sin(std::numbers::pi * f * tau), 2);
        CHECK(std::fabs(ratio_db - 10.0 * std::log10(h)) < 3.0);
        ++checked;
    }
    CHECK(checked > 100); // the band actually got sampled
}

TEST_CASE("compose_if_noise: zero realizations compose to zero") {
    PhaseNoiseSet set;
    set.lfm = synthesize_noise(PsdProfile::silent(), 1024, 10e6, 1);
    set.tx_lo = synthesize_noise(PsdProfile::silent(), 1024, 10e6, 2);
    set.rx_lo = synthesize_noise(PsdProfile::silent(), 1024, 10e6, 3);
    const auto c = compose_if_noise(set, 100e-9, 0.0);
    for (double v : c.samples) CHECK(std::fabs(v) < 1e-5);
}

TEST_CASE("compose_if_noise matches the brute-force composition") {
    const auto profile = PsdProfile::default_profile();
    PhaseNoiseSet set;
    set.lfm = synthesize_noise(profile, 4096, 10e6, 11);
    set.tx_lo = synthesize_noise(profile, 4096, 10e6, 12);
    set.rx_lo = synthesize_noise(profile, 4096, 10e6, 13);
    set.tx_lo_delay_s = 50e-9;
    set.rx_lo_delay_s = 30e-9;
    for (double tau_extra : {0.0, 3.3e-6}) {
        const auto got = compose_if_noise(set, 100e-9, tau_extra);
        const auto want = oracle::brute_force_compose(set, 100e-9, tau_extra);
        for (std::size_t k = 0; k < want.size(); ++k)
            CHECK(got.samples[k] == doctest::Approx(want[k]).epsilon(1e-14));
    }
}

TEST_CASE("range correlation: dominant LO noise sets the composite PSD") {
    // LO PSDs 20 dB above the reference-chirp PSD; tau_int = 100 ns.
    const PsdProfile lfm({{1e3, -100.0}, {5e6, -100.0}});
    const PsdProfile lo({{1e3, -80.0}, {5e6, -80.0}});
    const double fs = 10e6;
    const std::size_t n = 1 << 15;
    std::vector<double> acc;
    PsdEstimate est;
    const int reals = 50;
    for (int s = 0; s < reals; ++s) {
        PhaseNoiseSet set;
        set.lfm = synthesize_noise(lfm, n, fs, 100 + s);
        set.tx_lo = synthesize_noise(lo, n, fs, 200 + s);
        set.rx_lo = synthesize_noise(lo, n, fs, 300 + s);
        set.tx_lo_delay_s = 50e-9;
        set.rx_lo_delay_s = 50e-9;
        const auto comp = compose_if_noise(set, 100e-9, 0.0);
        est = estimate_psd(comp, 4096);
        if (acc.empty()) acc.assign(est.level_dbc_hz.size(), 0.0);
        for (std::size_t b = 0; b < acc.size(); ++b)
            acc[b] += std::pow(10.0, est.level_dbc_hz[b] / 10.0);
    }
    std::size_t bin = 0;
    for (std::size_t b = 0; b < est.freq_hz.size(); ++b)
        if (std::fabs(est.freq_hz[b] - 10e3) < std::fabs(est.freq_hz[bin] - 10e3)) bin = b;
    const double got_db = 10.0 * std::log10(acc[bin] / reals);
    const double lo_sum_db = 10.0 * std::log10(2.0 * std::pow(10.0, -80.0 / 10.0));
    CHECK(std::fabs(got_db - lo_sum_db) < 1.0);
}

TEST_CASE("estimate_psd: all-zero input hits the -400 dBc/Hz floor") {
    NoiseRealization z;
    z.samples.assign(8192, 0.0);
    z.fs_hz = 10e6;
    const auto est = estimate_psd(z, 1024);
    for (double l : est.level_dbc_hz) CHECK(l == -400.0);
}

TEST_CASE("estimate_psd: flat profile round trip within 2 dB") {
    const PsdProfile flat({{1e3, -100.0}, {5e6, -100.0}});
    std::vector<double> acc;
    PsdEstimate est;
    const int reals = 50;
    for (int s = 0; s < reals; ++s) {
        const auto x = synthesize_noise(flat, 1 << 15, 10e6, 700 + s);
        est = estimate_psd(x, 4096);
        if (acc.empty()) acc.assign(est.level_dbc_hz.size(), 0.0);
        for (std::size_t b = 0; b < acc.size(); ++b)
            acc[b] += std::pow(10.0, est.level_dbc_hz[b] / 10.0);
    }
    for (double f : {100e3, 1e6, 2.5e6, 4e6}) {
        std::size_t bin = static_cast<std::size_t>(f / (10e6 / 4096.0));
        CHECK(10.0 * std::log10(acc[bin] / reals) == doctest::Approx(-100.0).epsilon(0.02));
    }
}

TEST_CASE("estimate_psd: tone power integrates to a^2/2") {
    const double fs = 10e6;
    const double a = 0.7;
    const double f0 = 1.25e6;
    NoiseRealization tone;
    tone.fs_hz = fs;
    tone.samples.resize(1 << 14);
    for (std::size_t n = 0; n < tone.samples.size(); ++n)
        tone.samples[n] = a * std::cos(2.0 * std::numbers::pi * f0 * n / fs);
    const auto est = estimate_psd(tone, 2048);
    const double df = fs / 2048.0;
    double power = 0.0;
    for (std::size_t b = 0; b < est.freq_hz.size(); ++b) {
        if (std::fabs(est.freq_hz[b] - f0) > 20.0 * df) continue;
        power += 2.0 * std::pow(10.0, est.level_dbc_hz[b] / 10.0) * df;
    }
    CHECK(power == doctest::Approx(a * a / 2.0).epsilon(0.05));
}

TEST_CASE("estimate_psd: segment larger than the realization is an error") {
    const auto n = synthesize_noise(PsdProfile::default_profile(), 1024, 10e6, 7);
    CHECK_THROWS_AS(estimate_psd(n, 2048), invalid_segment_error);
}

TEST_CASE("round trip: default profile within 2 dB at in-band points") {
    const auto profile = PsdProfile::default_profile();
    const double fs = 10e6;
    const std::size_t n = 1 << 16;
    const std::size_t segment = 8192;
    std::vector<double> acc;
    PsdEstimate est;
    const int reals = 50;
    for (int s = 0; s < reals; ++s) {
        const auto x = synthesize_noise(profile, n, fs, 9000 + s);
        est = estimate_psd(x, segment);
        if (acc.empty()) acc.assign(est.level_dbc_hz.size(), 0.0);
        for (std::size_t b = 0; b < acc.size(); ++b)
            acc[b] += std::pow(10.0, est.level_dbc_hz[b] / 10.0);
    }
    const double df = fs / segment;
    for (const auto& pt : profile.points()) {
        if (pt.offset_hz <= fs / n || pt.offset_hz >= fs / 2.0) continue;
        const auto bin = static_cast<std::size_t>(std::llround(pt.offset_hz / df));
        const double got = 10.0 * std::log10(acc[bin] / reals);
        const double want = profile.level_dbc_hz(static_cast<double>(bin) * df);
        CHECK(std::fabs(got - want) < 2.0);
    }
}

TEST_CASE("small-angle regime: default profile composite stays below 0.1 rad") {
    const auto profile = PsdProfile::default_profile();
    const double fs = 10e6;
    const std::size_t n = 8192;
    double acc_ms = 0.0;
    const int reals = 50;
    for (int s = 0; s < reals; ++s) {
        PhaseNoiseSet set;
        set.lfm = synthesize_noise(profile, n, fs, derive_seed(77, SeedStream::lfm, s));
        set.tx_lo = synthesize_noise(profile, n, fs, derive_seed(77, SeedStream::tx_lo, s));
        set.rx_lo = synthesize_noise(profile, n, fs, derive_seed(77, SeedStream::rx_lo, s));
        const auto comp = compose_if_noise(set, 58.7e-9, 0.0);
        acc_ms += oracle::variance(comp.samples);
    }
    CHECK(std::sqrt(acc_ms / reals) < 0.1);
}

TEST_SUITE_END();
