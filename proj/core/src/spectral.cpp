#include "spcradar/spectral.hpp"

#include "spcradar/errors.hpp"
#include "spcradar/fft.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace spcr {

namespace {

constexpr double kFloorDb = -400.0;

double to_db(double linear) {
    return std::max(10.0 * std::log10(std::max(linear, 0.0)), kFloorDb);
}

} // namespace

SpectrumResult power_spectrum(const BasebandFrame& frame, Window window, std::size_t nfft) {
    const std::size_t n = frame.samples.size();
    if (nfft < n) throw invalid_size_error("power_spectrum: nfft must be >= frame length");
    const auto w = make_window(window, n, WindowShape::periodic);
    std::vector<double> buf(n);
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        buf[i] = w[i] * frame.samples[i];
        wsum += w[i];
    }
    const auto spec = fft::rfft(buf, nfft);
    const double cg = (wsum / 2.0) * (wsum / 2.0);

    SpectrumResult out;
    out.bin_hz = frame.fs_hz / static_cast<double>(nfft);
    out.method = frame.method;
    out.power_db.resize(spec.size());
    for (std::size_t b = 0; b < spec.size(); ++b) out.power_db[b] = to_db(std::norm(spec[b]) / cg);
    return out;
}

SpectrumResult average_spectra(std::span<const SpectrumResult> spectra) {
    if (spectra.empty()) throw incompatible_spectra_error("average_spectra: empty input");
    const auto& first = spectra.front();
    for (const auto& s : spectra) {
        if (s.power_db.size() != first.power_db.size() || s.bin_hz != first.bin_hz ||
            s.method != first.method || s.f_shift_applied_hz != first.f_shift_applied_hz)
            throw incompatible_spectra_error("average_spectra: mismatched axes or method");
    }
    SpectrumResult out = first;
    std::vector<double> acc(first.power_db.size(), 0.0);
    std::size_t total = 0;
    for (const auto& s : spectra) {
        const double n = static_cast<double>(s.n_averaged);
        for (std::size_t b = 0; b < acc.size(); ++b)
            acc[b] += n * std::pow(10.0, s.power_db[b] / 10.0);
        total += s.n_averaged;
    }
    for (std::size_t b = 0; b < acc.size(); ++b)
        out.power_db[b] = to_db(acc[b] / static_cast<double>(total));
    out.n_averaged = total;
    return out;
}

SpectrumResult bins_to_range(SpectrumResult spectrum, double alpha_hz_per_s) {
    if (!(alpha_hz_per_s > 0.0)) throw config_error("bins_to_range: alpha must be > 0");
    spectrum.range_m.resize(spectrum.power_db.size());
    for (std::size_t k = 0; k < spectrum.range_m.size(); ++k) {
        spectrum.range_m[k] = kSpeedOfLight * spectrum.bin_hz * static_cast<double>(k) /
                              (2.0 * alpha_hz_per_s);
    }
    return spectrum;
}

namespace {

// Moving median over the included bins of a window centered at i.
std::vector<double> moving_median(const std::vector<double>& v, const std::vector<bool>& excluded,
                                  std::size_t window) {
    const std::size_t n = v.size();
    const std::size_t hw = window / 2;
    std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
    std::vector<double> buf;
    for (std::size_t i = 0; i < n; ++i) {
        if (excluded[i]) continue;
        buf.clear();
        const std::size_t lo = (i > hw) ? i - hw : 0;
        const std::size_t hi = std::min(i + hw, n - 1);
        for (std::size_t j = lo; j <= hi; ++j)
            if (!excluded[j]) buf.push_back(v[j]);
        auto mid = buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 2);
        std::nth_element(buf.begin(), mid, buf.end());
        double m = *mid;
        if (buf.size() % 2 == 0) {
            auto lower = std::max_element(buf.begin(), mid);
            m = (m + *lower) / 2.0;
        }
        out[i] = m;
    }
    return out;
}

// Cubic least-squares smoothing pass evaluated at each included bin over a
// symmetric (shrinking near the edges) window.
std::vector<double> cubic_smooth(const std::vector<double>& v, const std::vector<bool>& excluded,
                                 std::size_t window) {
    const std::size_t n = v.size();
    const std::size_t hw = window / 2;
    std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < n; ++i) {
        if (excluded[i] || std::isnan(v[i])) continue;
        const std::size_t lo = (i > hw) ? i - hw : 0;
        const std::size_t hi = std::min(i + hw, n - 1);
        // Normal equations for a cubic in (j - i).
        double sx[7] = {0, 0, 0, 0, 0, 0, 0};
        double sy[4] = {0, 0, 0, 0};
        for (std::size_t j = lo; j <= hi; ++j) {
            if (excluded[j] || std::isnan(v[j])) continue;
            double x = static_cast<double>(j) - static_cast<double>(i);
            double xp = 1.0;
            for (int p = 0; p < 7; ++p) {
                sx[p] += xp;
                if (p < 4) sy[p] += xp * v[j];
                xp *= x;
            }
        }
        if (sx[0] < 5.0) { // not enough points for a cubic; fall back to mean
            out[i] = sy[0] / sx[0];
            continue;
        }
        double m[4][5];
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) m[r][c] = sx[r + c];
            m[r][4] = sy[r];
        }
        // Gaussian elimination with partial pivoting on the 4x4 system.
        for (int col = 0; col < 4; ++col) {
            int piv = col;
            for (int r = col + 1; r < 4; ++r)
                if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
            std::swap(m[piv], m[col]);
            if (std::fabs(m[col][col]) < 1e-12) continue;
            for (int r = 0; r < 4; ++r) {
                if (r == col) continue;
                double f = m[r][col] / m[col][col];
                for (int c = col; c < 5; ++c) m[r][c] -= f * m[col][c];
            }
        }
        out[i] = (std::fabs(m[0][0]) > 1e-12) ? m[0][4] / m[0][0] : sy[0] / sx[0];
    }
    return out;
}

} // namespace

ImprovementCurve improvement_curve(const SpectrumResult& common, const SpectrumResult& spc,
                                   double f_beat_leakage_hz, const ImprovementOptions& options) {
    if (common.bin_hz != spc.bin_hz || common.power_db.size() != spc.power_db.size())
        throw incompatible_spectra_error("improvement_curve: bin width or size mismatch");
    const std::size_t n = common.power_db.size();
    const auto shift = static_cast<std::size_t>(std::llround(f_beat_leakage_hz / common.bin_hz));
    if (shift >= n) throw incompatible_spectra_error("improvement_curve: shift exceeds spectrum");

    ImprovementCurve curve;
    curve.shift_bins = shift;
    const std::size_t n_out = n - shift;
    curve.range_m.resize(n_out);
    curve.delta_db.resize(n_out);
    curve.excluded.assign(n_out, false);
    for (std::size_t k = 0; k < n_out; ++k) {
        curve.range_m[k] = kSpeedOfLight * spc.bin_hz * static_cast<double>(k) /
                           (2.0 * options.alpha_hz_per_s);
        curve.delta_db[k] = common.power_db[k + shift] - spc.power_db[k];
        if (k <= options.guard_bins) curve.excluded[k] = true;
    }

    auto med = moving_median(curve.delta_db, curve.excluded, options.fit_window_bins);
    curve.fitted_delta_db = cubic_smooth(med, curve.excluded, options.fit_window_bins);

    double fit_max = -std::numeric_limits<double>::infinity();
    double fit_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_out; ++k) {
        if (curve.excluded[k] || std::isnan(curve.fitted_delta_db[k])) continue;
        if (curve.range_m[k] < options.range_min_m || curve.range_m[k] > options.range_max_m)
            continue;
        fit_max = std::max(fit_max, curve.fitted_delta_db[k]);
        fit_min = std::min(fit_min, curve.fitted_delta_db[k]);
    }
    curve.fit_max_db = fit_max;
    curve.fit_min_db = fit_min;

    double acc = 0.0;
    std::size_t cnt = 0;
    for (std::size_t k = options.minor_region_lo_bin;
         k <= options.minor_region_hi_bin && k < n_out; ++k) {
        if (curve.excluded[k]) continue;
        acc += curve.delta_db[k];
        ++cnt;
    }
    curve.minor_region_mean_db = cnt > 0 ? acc / static_cast<double>(cnt) : 0.0;
    return curve;
}

double measure_snr(const SpectrumResult& spectrum, std::size_t peak_bin,
                   const SnrOptions& options) {
    const std::size_t n = spectrum.power_db.size();
    if (peak_bin >= n) throw invalid_annulus_error("measure_snr: peak bin out of range");
    std::vector<double> annulus;
    const std::size_t lo =
        (peak_bin > options.annulus_bins) ? peak_bin - options.annulus_bins : 0;
    const std::size_t hi = std::min(peak_bin + options.annulus_bins, n - 1);
    for (std::size_t k = lo; k <= hi; ++k) {
        const std::size_t d = (k > peak_bin) ? k - peak_bin : peak_bin - k;
        if (d <= options.peak_guard_bins) continue;
        annulus.push_back(spectrum.power_db[k]);
    }
    if (annulus.empty()) throw invalid_annulus_error("measure_snr: empty annulus");
    auto mid = annulus.begin() + static_cast<std::ptrdiff_t>(annulus.size() / 2);
    std::nth_element(annulus.begin(), mid, annulus.end());
    return spectrum.power_db[peak_bin] - *mid;
}

std::size_t find_peak_bin(const SpectrumResult& spectrum, double f_lo_hz, double f_hi_hz) {
    const std::size_t n = spectrum.power_db.size();
    auto lo = static_cast<std::size_t>(std::ceil(std::max(f_lo_hz, 0.0) / spectrum.bin_hz));
    auto hi = static_cast<std::size_t>(std::floor(f_hi_hz / spectrum.bin_hz));
    hi = std::min(hi, n - 1);
    if (lo > hi) throw invalid_window_error("find_peak_bin: empty band");
    std::size_t best = lo;
    for (std::size_t k = lo; k <= hi; ++k)
        if (spectrum.power_db[k] > spectrum.power_db[best]) best = k;
    return best;
}

} // namespace spcr
