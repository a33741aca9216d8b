#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

namespace {
constexpr long double kPiL = 3.14159265358979323846264338327950288L;
}

double tone_sample(double f_over_fs, std::size_t n, double theta) {
    const long double phase = 2.0L * kPiL * static_cast<long double>(f_over_fs) *
                                  static_cast<long double>(n) +
                              static_cast<long double>(theta);
    return static_cast<double>(std::cos(phase));
}

std::vector<double> brute_force_frame(const spcr::ScenarioConfig& config) {
    const auto& g = config.geometry;
    const long double fs = g.fs_hz();
    const long double alpha = static_cast<long double>(g.sweep_bandwidth_hz) /
                              static_cast<long double>(g.sweep_period_s);
    const long double beat = alpha * static_cast<long double>(config.leakage.tau_int_s);
    const long double f_leak = g.beat_subtracts
                                   ? static_cast<long double>(g.f_if_carrier_hz) - beat
                                   : static_cast<long double>(g.f_if_carrier_hz) + beat;

    std::vector<long double> freqs{f_leak};
    std::vector<long double> amps{static_cast<long double>(config.leakage.amplitude_v)};
    std::vector<long double> thetas{static_cast<long double>(config.leakage.theta_if_rad)};
    for (const auto& t : config.targets) {
        const long double tau_t = 2.0L * static_cast<long double>(t.range_m) /
                                  static_cast<long double>(spcr::kSpeedOfLight);
        freqs.push_back(f_leak + alpha * tau_t);
        amps.push_back(static_cast<long double>(t.amplitude_v));
        thetas.push_back(static_cast<long double>(t.theta_if_rad));
    }

    std::vector<double> out;
    out.reserve(g.samples_kept);
    for (std::size_t n = g.samples_discarded(); n < g.samples_per_chirp; ++n) {
        long double acc = 0.0L;
        for (std::size_t i = 0; i < freqs.size(); ++i) {
            acc += amps[i] * std::cos(2.0L * kPiL * freqs[i] * static_cast<long double>(n) / fs +
                                      thetas[i]);
        }
        out.push_back(static_cast<double>(acc));
    }
    return out;
}

std::vector<double> brute_force_compose(const spcr::PhaseNoiseSet& set, double tau_int_s,
                                        double tau_extra_s) {
    const double fs = set.lfm.fs_hz;
    const auto n = set.lfm.samples.size();
    const auto d_lfm = static_cast<std::ptrdiff_t>(std::llround((tau_int_s + tau_extra_s) * fs));
    const auto d_tx =
        static_cast<std::ptrdiff_t>(std::llround((set.tx_lo_delay_s + tau_extra_s) * fs));
    const auto d_rx =
        static_cast<std::ptrdiff_t>(std::llround((set.rx_lo_delay_s + tau_extra_s) * fs));
    auto at = [](const std::vector<double>& v, std::ptrdiff_t i) {
        return v[static_cast<std::size_t>(std::max<std::ptrdiff_t>(i, 0))];
    };
    std::vector<double> out(n);
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
        out[static_cast<std::size_t>(k)] = set.lfm.samples[static_cast<std::size_t>(k)] -
                                           at(set.lfm.samples, k - d_lfm) -
                                           at(set.tx_lo.samples, k - d_tx) +
                                           at(set.rx_lo.samples, k - d_rx);
    }
    return out;
}

double dtft_mag(std::span<const double> samples, double f_over_fs) {
    long double re = 0.0L, im = 0.0L;
    const long double w = 2.0L * kPiL * static_cast<long double>(f_over_fs);
    for (std::size_t n = 0; n < samples.size(); ++n) {
        const long double a = w * static_cast<long double>(n);
        re += samples[n] * std::cos(a);
        im -= samples[n] * std::sin(a);
    }
    return static_cast<double>(std::sqrt(re * re + im * im));
}

double dtft_peak(std::span<const double> samples, double f_lo, double f_hi, double df_stop) {
    // Dense grid to isolate the global peak, then golden-section refine.
    const int grid = 512;
    double best_f = f_lo, best_m = -1.0;
    for (int i = 0; i <= grid; ++i) {
        double f = f_lo + (f_hi - f_lo) * i / grid;
        double m = dtft_mag(samples, f);
        if (m > best_m) {
            best_m = m;
            best_f = f;
        }
    }
    double a = std::max(f_lo, best_f - (f_hi - f_lo) / grid);
    double b = std::min(f_hi, best_f + (f_hi - f_lo) / grid);
    const double gr = 0.61803398874989485;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = dtft_mag(samples, c), fd = dtft_mag(samples, d);
    while (b - a > df_stop) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = dtft_mag(samples, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = dtft_mag(samples, d);
        }
    }
    return (a + b) / 2.0;
}

double psd_integral(const spcr::PsdProfile& profile, double f_lo, double f_hi) {
    const int steps = 20000;
    double acc = 0.0;
    double prev_f = f_lo, prev_s = profile.psd_one_sided(f_lo);
    for (int i = 1; i <= steps; ++i) {
        double f = f_lo + (f_hi - f_lo) * i / steps;
        double s = profile.psd_one_sided(f);
        acc += 0.5 * (s + prev_s) * (f - prev_f);
        prev_f = f;
        prev_s = s;
    }
    return acc;
}

double pearson_r(std::span<const double> a, std::span<const double> b) {
    const double ma = mean(a), mb = mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

double mean(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size());
}

} // namespace oracle
