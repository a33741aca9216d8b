#include "spcradar/capture.hpp"

#include "spcradar/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace spcr {

using nlohmann::json;

CaptureHeader load_capture_header(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw capture_io_error("cannot open capture header: " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw capture_io_error(path.string() + ": " + e.what());
    }
    CaptureHeader h;
    const auto fmt = j.value("format", std::string{});
    if (fmt == "f32le")
        h.format = SampleFormat::f32le;
    else if (fmt == "i16le")
        h.format = SampleFormat::i16le;
    else
        throw capture_io_error(path.string() + ": unrecognized format tag '" + fmt + "'");
    h.fs_hz = j.value("fs_hz", 0.0);
    h.samples_per_chirp = j.value("samples_per_chirp", std::size_t{0});
    h.samples_to_discard = j.value("samples_to_discard", std::size_t{0});
    h.n_chirps = j.value("n_chirps", std::size_t{0});
    h.scale_v_per_lsb = j.value("scale_v_per_lsb", 1.0);
    if (!(h.fs_hz > 0.0) || h.samples_per_chirp == 0 || h.n_chirps == 0 ||
        h.samples_to_discard >= h.samples_per_chirp)
        throw capture_io_error(path.string() + ": header fields out of range");
    return h;
}

void save_capture_header(const CaptureHeader& header, const std::filesystem::path& path) {
    json j;
    j["format"] = header.format == SampleFormat::f32le ? "f32le" : "i16le";
    j["fs_hz"] = header.fs_hz;
    j["samples_per_chirp"] = header.samples_per_chirp;
    j["samples_to_discard"] = header.samples_to_discard;
    j["n_chirps"] = header.n_chirps;
    if (header.format == SampleFormat::i16le) j["scale_v_per_lsb"] = header.scale_v_per_lsb;
    std::ofstream out(path);
    if (!out) throw capture_io_error("cannot write capture header: " + path.string());
    out << j.dump(2) << '\n';
}

std::vector<double> read_capture(const std::filesystem::path& path, const CaptureHeader& header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw capture_io_error("cannot open capture file: " + path.string());
    in.seekg(0, std::ios::end);
    const auto actual = static_cast<std::size_t>(in.tellg());
    const auto expected = header.expected_file_bytes();
    if (actual != expected)
        throw capture_size_error("capture size mismatch: expected " + std::to_string(expected) +
                                 " bytes, file has " + std::to_string(actual) + " bytes");
    in.seekg(0);
    const std::size_t count = header.n_chirps * header.samples_per_chirp;
    std::vector<double> out(count);
    if (header.format == SampleFormat::f32le) {
        std::vector<float> raw(count);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(expected));
        if (!in) throw capture_io_error("short read on capture file: " + path.string());
        for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<double>(raw[i]);
    } else {
        std::vector<std::int16_t> raw(count);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(expected));
        if (!in) throw capture_io_error("short read on capture file: " + path.string());
        for (std::size_t i = 0; i < count; ++i)
            out[i] = static_cast<double>(raw[i]) * header.scale_v_per_lsb;
    }
    return out;
}

void write_capture(const std::filesystem::path& path, const CaptureHeader& header,
                   const std::vector<double>& samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw capture_io_error("cannot write capture file: " + path.string());
    if (header.format == SampleFormat::f32le) {
        std::vector<float> raw(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) raw[i] = static_cast<float>(samples[i]);
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size() * sizeof(float)));
    } else {
        std::vector<std::int16_t> raw(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            double q = std::round(samples[i] / header.scale_v_per_lsb);
            q = std::clamp(q, -32768.0, 32767.0);
            raw[i] = static_cast<std::int16_t>(q);
        }
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size() * sizeof(std::int16_t)));
    }
    if (!out) throw capture_io_error("write failed on capture file: " + path.string());
}

double format_roundtrip(double v, const CaptureHeader& header) {
    if (header.format == SampleFormat::f32le) return static_cast<double>(static_cast<float>(v));
    double q = std::round(v / header.scale_v_per_lsb);
    q = std::clamp(q, -32768.0, 32767.0);
    return q * header.scale_v_per_lsb;
}

} // namespace spcr
