#ifndef SPCRADAR_SPC_HPP
#define SPCRADAR_SPC_HPP

#include "spcradar/fir.hpp"
#include "spcradar/scenario.hpp"
#include "spcradar/window.hpp"

#include <cstddef>
#include <vector>

namespace spcr {

/// Extracted beat frequency and constant phase of the dominant leakage.
struct LeakageEstimate {
    double f_if_beat_leakage_hz = 0.0;
    double theta_if_leakage_rad = 0.0; // (-pi, pi]
    std::size_t peak_bin = 0;          // zero-based; f = fs * peak_bin / nfft
    double peak_power_db = 0.0;        // relative to a unit bin-centered tone
    std::size_t nfft_used = 0;
};

struct EstimatorSettings {
    std::size_t nfft = std::size_t{1} << 20;
    Window window = Window::hann;
    /// Search window in Hz; negative bounds select the default
    /// quarter-rate point +- 100 kHz.
    double search_lo_hz = -1.0;
    double search_hi_hz = -1.0;

    void resolve_search(double fs_hz);
};

/// Windowed, zero-padded FFT peak search over the configured band.
/// Ties resolve to the lowest bin.
LeakageEstimate estimate_leakage(const IFFrame& frame, const EstimatorSettings& settings);

struct NcoParams {
    double frequency_hz = 0.0;
    double phase_rad = 0.0;
    double fs_hz = 0.0;
    std::size_t length = 0;
};

/// Unit-amplitude cos(2*pi*f*n/fs + theta), n = 0..length-1.
std::vector<double> make_nco(const NcoParams& params);

enum class Method {
    common,
    spc,
};

struct BasebandFrame {
    std::vector<double> samples;
    double fs_hz = 0.0;
    Method method = Method::common;
    /// LPF latency at the pre-decimation (IF) rate.
    std::size_t group_delay_samples = 0;
};

/// Final down-conversion with the leakage's own beat frequency and constant
/// phase: mixes, low-pass filters, decimates. The leakage collapses to a
/// near-DC term and every target shifts down by the leakage beat frequency.
BasebandFrame spc_downconvert(const IFFrame& frame, const LeakageEstimate& estimate,
                              const FirFilter& lpf, std::size_t decimate);

/// Baseline down-conversion with the known IF carrier and zero phase.
BasebandFrame common_downconvert(const IFFrame& frame, double f_if_carrier_hz,
                                 const FirFilter& lpf, std::size_t decimate);

} // namespace spcr

#endif
