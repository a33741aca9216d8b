#include "spcradar/csv.hpp"

#include "spcradar/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace spcr {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary); // '\n' endings on every platform
    if (!out) throw config_error("cannot write CSV file: " + path.string());
    return out;
}

} // namespace

void write_spectrum_csv(const SpectrumResult& spectrum, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "bin_hz,range_m,power_db\n";
    for (std::size_t k = 0; k < spectrum.power_db.size(); ++k) {
        out << format_double(static_cast<double>(k) * spectrum.bin_hz) << ',';
        if (k < spectrum.range_m.size()) out << format_double(spectrum.range_m[k]);
        out << ',' << format_double(spectrum.power_db[k]) << '\n';
    }
}

void write_improvement_csv(const ImprovementCurve& curve, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "range_m,delta_db,fitted_delta_db,excluded\n";
    for (std::size_t k = 0; k < curve.delta_db.size(); ++k) {
        out << format_double(curve.range_m[k]) << ',' << format_double(curve.delta_db[k]) << ',';
        if (!curve.excluded[k] && !std::isnan(curve.fitted_delta_db[k]))
            out << format_double(curve.fitted_delta_db[k]);
        out << ',' << (curve.excluded[k] ? '1' : '0') << '\n';
    }
}

void write_buckets_csv(const PhaseBucketStats& stats, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "bucket_center_rad,mean_abs_noise_v,n\n";
    for (std::size_t b = 0; b < stats.bucket_centers_rad.size(); ++b) {
        out << format_double(stats.bucket_centers_rad[b]) << ','
            << format_double(stats.mean_abs_noise_v[b]) << ',' << stats.n_samples[b] << '\n';
    }
}

} // namespace spcr
