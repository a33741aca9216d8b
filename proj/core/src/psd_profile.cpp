#include "spcradar/psd_profile.hpp"

#include "spcradar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace spcr {

PsdProfile::PsdProfile(std::vector<PsdPoint> points) : points_(std::move(points)) {
    if (points_.size() < 2)
        throw invalid_profile_error("PSD profile needs at least 2 points");
    double prev = 0.0;
    for (const auto& p : points_) {
        if (!(p.offset_hz > 0.0) || !std::isfinite(p.offset_hz))
            throw invalid_profile_error("PSD profile offsets must be positive and finite");
        if (!std::isfinite(p.level_dbc_hz))
            throw invalid_profile_error("PSD profile levels must be finite");
        if (p.offset_hz <= prev)
            throw invalid_profile_error("PSD profile offsets must be strictly increasing");
        prev = p.offset_hz;
    }
}

double PsdProfile::level_dbc_hz(double offset_hz) const {
    if (offset_hz <= points_.front().offset_hz) return points_.front().level_dbc_hz;
    if (offset_hz >= points_.back().offset_hz) return points_.back().level_dbc_hz;
    // Linear in (log10 f, dB) between bracketing points.
    std::size_t hi = 1;
    while (points_[hi].offset_hz < offset_hz) ++hi;
    const auto& a = points_[hi - 1];
    const auto& b = points_[hi];
    double t = (std::log10(offset_hz) - std::log10(a.offset_hz)) /
               (std::log10(b.offset_hz) - std::log10(a.offset_hz));
    return a.level_dbc_hz + t * (b.level_dbc_hz - a.level_dbc_hz);
}

double PsdProfile::psd_one_sided(double offset_hz) const {
    return 2.0 * std::pow(10.0, level_dbc_hz(offset_hz) / 10.0);
}

PsdProfile PsdProfile::load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open PSD profile file: " + path.string());
    std::vector<PsdPoint> pts;
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // Trim whitespace.
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (!header_seen) {
            if (line.find("offset_hz") == std::string::npos)
                throw config_error(path.string() + ":" + std::to_string(line_no) +
                                   ": header line 'offset_hz,level_dbc_hz' required");
            header_seen = true;
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        PsdPoint p;
        if (!(ss >> p.offset_hz >> p.level_dbc_hz))
            throw config_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected 'offset_hz,level_dbc_hz'");
        pts.push_back(p);
    }
    if (!header_seen) throw config_error(path.string() + ": missing header line");
    try {
        return PsdProfile(std::move(pts));
    } catch (const invalid_profile_error& e) {
        throw config_error(path.string() + ": " + e.what());
    }
}

void PsdProfile::save_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw config_error("cannot write PSD profile file: " + path.string());
    out << "offset_hz,level_dbc_hz\n";
    char buf[64];
    for (const auto& p : points_) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", p.offset_hz, p.level_dbc_hz);
        out << buf;
    }
}

PsdProfile PsdProfile::default_profile() {
    return PsdProfile({{100.0, -48.0},
                       {1e3, -62.0},
                       {1e4, -76.0},
                       {1e5, -91.0},
                       {1e6, -106.0},
                       {5e6, -128.0}});
}

PsdProfile PsdProfile::silent() {
    return PsdProfile({{1.0, -300.0}, {1e7, -300.0}});
}

} // namespace spcr
