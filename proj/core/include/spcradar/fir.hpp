#ifndef SPCRADAR_FIR_HPP
#define SPCRADAR_FIR_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace spcr {

struct FilterSpec {
    double passband_hz = 1.3e6;
    double stopband_hz = 3.5e6;
    double stopband_atten_db = 80.0;
    /// 0 selects the order automatically (smallest odd count meeting the
    /// attenuation).
    std::size_t num_taps = 0;
};

/// Linear-phase equiripple (Parks-McClellan) lowpass design. Returns an
/// odd number of symmetric taps with unit passband gain.
std::vector<double> design_lowpass(const FilterSpec& spec, double fs_hz);

/// Magnitude response of a symmetric FIR at normalized frequency
/// f_over_fs in [0, 0.5].
double fir_response_at(std::span<const double> taps, double f_over_fs);

class FirFilter {
public:
    explicit FirFilter(std::vector<double> taps);
    FirFilter(const FilterSpec& spec, double fs_hz) : FirFilter(design_lowpass(spec, fs_hz)) {}

    /// Zero-state convolution evaluated at every factor-th output sample.
    /// Output length is ceil(input length / factor).
    std::vector<double> filter_decimate(std::span<const double> in, std::size_t factor) const;

    /// Latency of the linear-phase filter at the input rate.
    std::size_t group_delay_samples() const { return (taps_.size() - 1) / 2; }

    const std::vector<double>& taps() const { return taps_; }

private:
    std::vector<double> taps_;
};

} // namespace spcr

#endif
