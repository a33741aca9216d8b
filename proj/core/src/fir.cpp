#include "spcradar/fir.hpp"

#include "spcradar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace spcr {

namespace {

constexpr double kPi = std::numbers::pi;

// Parks-McClellan exchange for a type-I lowpass on the dense grid
// [0, fp] u [fst, 0.5] (normalized frequency), equal band weights.
class RemezLowpass {
public:
    RemezLowpass(std::size_t num_taps, double fp, double fst) : n_taps_(num_taps) {
        r_ = (num_taps - 1) / 2 + 2; // extremal count
        build_grid(fp, fst);
    }

    std::vector<double> design() {
        std::vector<std::size_t> ext(r_);
        for (std::size_t k = 0; k < r_; ++k)
            ext[k] = k * (grid_.size() - 1) / (r_ - 1);

        double delta = 0.0;
        for (int iter = 0; iter < 40; ++iter) {
            compute_delta(ext, delta);
            std::vector<double> err(grid_.size());
            double emax = 0.0;
            for (std::size_t i = 0; i < grid_.size(); ++i) {
                err[i] = interp(x_[i]) - desired_[i];
                emax = std::max(emax, std::fabs(err[i]));
            }
            auto next = pick_extrema(err);
            if (next.size() < r_) break; // degenerate; keep last solution
            next.resize(r_);
            bool stable = std::equal(next.begin(), next.end(), ext.begin());
            ext = std::move(next);
            if (stable || emax - std::fabs(delta) < 1e-6 * std::fabs(delta) + 1e-15) {
                compute_delta(ext, delta);
                break;
            }
        }
        return impulse_response();
    }

private:
    void build_grid(double fp, double fst) {
        const std::size_t density = 16;
        const std::size_t npts = density * n_taps_;
        const double total = fp + (0.5 - fst);
        const auto n_pass = std::max<std::size_t>(static_cast<std::size_t>(npts * fp / total), 8);
        const auto n_stop = std::max<std::size_t>(npts - n_pass, 8);
        for (std::size_t i = 0; i < n_pass; ++i) {
            double f = fp * static_cast<double>(i) / static_cast<double>(n_pass - 1);
            grid_.push_back(f);
            desired_.push_back(1.0);
        }
        for (std::size_t i = 0; i < n_stop; ++i) {
            double f = fst + (0.5 - fst) * static_cast<double>(i) / static_cast<double>(n_stop - 1);
            grid_.push_back(f);
            desired_.push_back(0.0);
        }
        x_.resize(grid_.size());
        for (std::size_t i = 0; i < grid_.size(); ++i) x_[i] = std::cos(2.0 * kPi * grid_[i]);
    }

    void compute_delta(const std::vector<std::size_t>& ext, double& delta) {
        ex_.assign(ext.size(), 0.0);
        ed_.assign(ext.size(), 0.0);
        for (std::size_t k = 0; k < ext.size(); ++k) {
            ex_[k] = x_[ext[k]];
            ed_[k] = desired_[ext[k]];
        }
        // Barycentric weights over the full extremal set.
        bw_.assign(ext.size(), 1.0);
        for (std::size_t k = 0; k < ext.size(); ++k) {
            for (std::size_t j = 0; j < ext.size(); ++j) {
                if (j == k) continue;
                bw_[k] /= (ex_[k] - ex_[j]);
            }
        }
        double num = 0.0, den = 0.0;
        double sign = 1.0;
        for (std::size_t k = 0; k < ext.size(); ++k) {
            num += bw_[k] * ed_[k];
            den += sign * bw_[k];
            sign = -sign;
        }
        delta = num / den;
        // Interpolation through the first r-1 points of the leveled values.
        cx_.assign(ex_.begin(), ex_.end() - 1);
        cv_.resize(cx_.size());
        cw_.assign(cx_.size(), 1.0);
        sign = 1.0;
        for (std::size_t k = 0; k < cx_.size(); ++k) {
            cv_[k] = ed_[k] - sign * delta;
            sign = -sign;
        }
        for (std::size_t k = 0; k < cx_.size(); ++k) {
            for (std::size_t j = 0; j < cx_.size(); ++j) {
                if (j == k) continue;
                cw_[k] /= (cx_[k] - cx_[j]);
            }
        }
    }

    double interp(double x) const {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < cx_.size(); ++k) {
            double d = x - cx_[k];
            if (std::fabs(d) < 1e-14) return cv_[k];
            double t = cw_[k] / d;
            num += t * cv_[k];
            den += t;
        }
        return num / den;
    }

    std::vector<std::size_t> pick_extrema(const std::vector<double>& err) const {
        std::vector<std::size_t> cand;
        const std::size_t n = err.size();
        for (std::size_t i = 0; i < n; ++i) {
            bool left = (i == 0) || std::fabs(err[i]) >= std::fabs(err[i - 1]);
            bool right = (i + 1 == n) || std::fabs(err[i]) >= std::fabs(err[i + 1]);
            bool band_edge = (i + 1 < n) && (grid_[i + 1] - grid_[i]) > 2.0 * (grid_[1] - grid_[0]);
            if ((left && right) || band_edge || (i > 0 && (grid_[i] - grid_[i - 1]) >
                                                              2.0 * (grid_[1] - grid_[0])))
                cand.push_back(i);
        }
        // Enforce sign alternation, keeping the largest |err| per run.
        std::vector<std::size_t> alt;
        for (std::size_t i : cand) {
            if (!alt.empty() && ((err[alt.back()] >= 0.0) == (err[i] >= 0.0))) {
                if (std::fabs(err[i]) > std::fabs(err[alt.back()])) alt.back() = i;
            } else {
                alt.push_back(i);
            }
        }
        // Trim to r extrema, dropping the smaller of the two outermost.
        while (alt.size() > r_) {
            if (std::fabs(err[alt.front()]) < std::fabs(err[alt.back()]))
                alt.erase(alt.begin());
            else
                alt.pop_back();
        }
        return alt;
    }

    std::vector<double> impulse_response() const {
        // Sample A(f) on the type-I reconstruction grid and inverse-transform.
        const std::size_t n = n_taps_;
        const std::size_t half = (n - 1) / 2;
        std::vector<double> a(half + 1);
        for (std::size_t i = 0; i <= half; ++i) {
            double f = static_cast<double>(i) / static_cast<double>(n);
            a[i] = interp(std::cos(2.0 * kPi * f));
        }
        std::vector<double> h(n);
        for (std::size_t k = 0; k < n; ++k) {
            double acc = a[0];
            for (std::size_t i = 1; i <= half; ++i) {
                acc += 2.0 * a[i] *
                       std::cos(2.0 * kPi * static_cast<double>(i) *
                                (static_cast<double>(k) - static_cast<double>(half)) /
                                static_cast<double>(n));
            }
            h[k] = acc / static_cast<double>(n);
        }
        return h;
    }

    std::size_t n_taps_;
    std::size_t r_;
    std::vector<double> grid_, desired_, x_;
    std::vector<double> ex_, ed_, bw_;
    std::vector<double> cx_, cv_, cw_;
};

double stopband_peak_db(std::span<const double> taps, double fst) {
    double worst = -400.0;
    const int steps = 512;
    for (int i = 0; i <= steps; ++i) {
        double f = fst + (0.5 - fst) * static_cast<double>(i) / steps;
        double mag = fir_response_at(taps, f);
        worst = std::max(worst, 20.0 * std::log10(std::max(mag, 1e-20)));
    }
    return worst;
}

} // namespace

std::vector<double> design_lowpass(const FilterSpec& spec, double fs_hz) {
    if (!(fs_hz > 0.0)) throw config_error("filter design: fs must be > 0");
    const double fp = spec.passband_hz / fs_hz;
    const double fst = spec.stopband_hz / fs_hz;
    if (!(fp > 0.0) || !(fst > fp) || !(fst < 0.5))
        throw config_error("filter design: need 0 < passband < stopband < fs/2");

    if (spec.num_taps != 0) {
        std::size_t n = spec.num_taps | 1; // force odd
        return RemezLowpass(n, fp, fst).design();
    }

    // Kaiser-style order estimate, then grow until the attenuation holds.
    double est = (spec.stopband_atten_db - 7.95) / (14.36 * (fst - fp)) + 1.0;
    std::size_t n = static_cast<std::size_t>(std::max(est, 7.0));
    n |= 1;
    for (int attempt = 0; attempt < 20; ++attempt) {
        auto taps = RemezLowpass(n, fp, fst).design();
        if (stopband_peak_db(taps, fst) <= -spec.stopband_atten_db) return taps;
        n += 2;
    }
    throw config_error("filter design: could not reach " +
                       std::to_string(spec.stopband_atten_db) + " dB stopband attenuation");
}

double fir_response_at(std::span<const double> taps, double f_over_fs) {
    // Symmetric taps: amplitude response via the cosine sum around the center.
    const std::size_t n = taps.size();
    const std::size_t half = (n - 1) / 2;
    double acc = taps[half];
    for (std::size_t i = 1; i <= half; ++i)
        acc += 2.0 * taps[half - i] * std::cos(2.0 * kPi * f_over_fs * static_cast<double>(i));
    return std::fabs(acc);
}

FirFilter::FirFilter(std::vector<double> taps) : taps_(std::move(taps)) {
    if (taps_.empty() || taps_.size() % 2 == 0)
        throw config_error("FirFilter: odd tap count required");
    const std::size_t half = (taps_.size() - 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        if (std::fabs(taps_[i] - taps_[taps_.size() - 1 - i]) > 1e-9)
            throw config_error("FirFilter: taps must be symmetric (linear phase)");
    }
}

std::vector<double> FirFilter::filter_decimate(std::span<const double> in,
                                               std::size_t factor) const {
    if (factor == 0) throw config_error("filter_decimate: factor must be >= 1");
    const std::size_t n = in.size();
    const std::size_t n_out = (n + factor - 1) / factor;
    std::vector<double> out(n_out, 0.0);
    const std::size_t m = taps_.size();
    for (std::size_t j = 0; j < n_out; ++j) {
        const std::size_t idx = j * factor;
        const std::size_t mmax = std::min(m - 1, idx);
        double acc = 0.0;
        for (std::size_t k = 0; k <= mmax; ++k) acc += taps_[k] * in[idx - k];
        out[j] = acc;
    }
    return out;
}

} // namespace spcr
