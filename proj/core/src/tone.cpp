#include "spcradar/tone.hpp"

#include <cmath>
#include <numbers>

namespace spcr {

TonePhase::TonePhase(double ratio) {
    hi_ = std::round(ratio * 67108864.0) / 67108864.0; // 2^26
    lo_ = ratio - hi_;
}

double TonePhase::phase(std::size_t n) const {
    const double dn = static_cast<double>(n);
    // dn * hi_ is exact for n < 2^24; remainder of a dyadic rational is exact.
    double frac = std::remainder(dn * hi_, 1.0) + dn * lo_;
    return 2.0 * std::numbers::pi * frac;
}

double TonePhase::cosine(std::size_t n, double theta) const {
    return std::cos(phase(n) + theta);
}

double wrap_to_pi(double angle_rad) {
    double y = std::remainder(angle_rad, 2.0 * std::numbers::pi);
    if (y <= -std::numbers::pi) y += 2.0 * std::numbers::pi;
    return y;
}

} // namespace spcr
