#ifndef SPCRADAR_CAPTURE_HPP
#define SPCRADAR_CAPTURE_HPP

#include <cstddef>
#include <filesystem>
#include <vector>

namespace spcr {

enum class SampleFormat {
    f32le,
    i16le,
};

/// Sidecar header describing a raw little-endian IF capture.
struct CaptureHeader {
    SampleFormat format = SampleFormat::f32le;
    double fs_hz = 10e6;
    std::size_t samples_per_chirp = 8800;
    std::size_t samples_to_discard = 608;
    std::size_t n_chirps = 0;
    double scale_v_per_lsb = 1.0; // i16le only

    std::size_t bytes_per_sample() const { return format == SampleFormat::f32le ? 4 : 2; }
    std::size_t expected_file_bytes() const {
        return n_chirps * samples_per_chirp * bytes_per_sample();
    }
};

CaptureHeader load_capture_header(const std::filesystem::path& path);
void save_capture_header(const CaptureHeader& header, const std::filesystem::path& path);

/// Reads the full sample stream (chirp-major, discard not yet applied).
/// Throws capture_size_error on a size mismatch with expected/actual byte
/// counts in the message, capture_io_error when unreadable.
std::vector<double> read_capture(const std::filesystem::path& path, const CaptureHeader& header);

/// Writes samples in the header's format (quantizing for i16le).
void write_capture(const std::filesystem::path& path, const CaptureHeader& header,
                   const std::vector<double>& samples);

/// The value a sample takes after a write/read round trip in this format.
double format_roundtrip(double v, const CaptureHeader& header);

} // namespace spcr

#endif
