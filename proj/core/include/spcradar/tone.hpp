#ifndef SPCRADAR_TONE_HPP
#define SPCRADAR_TONE_HPP

#include <cstddef>

namespace spcr {

/// Sample-accurate phase of a tone on a sampling grid. Evaluating
/// 2*pi*f*n/fs directly loses precision once n*f/fs reaches thousands of
/// cycles; this splits the frequency ratio so the integer-cycle part is
/// reduced exactly.
class TonePhase {
public:
    /// ratio = f / fs, |ratio| <= 1.
    explicit TonePhase(double ratio);

    /// Phase 2*pi*frac(ratio*n) in (-pi, pi], exact to ~1e-15 rad for
    /// n < 2^24.
    double phase(std::size_t n) const;

    /// cos(phase(n) + theta).
    double cosine(std::size_t n, double theta) const;

private:
    double hi_ = 0.0; // 26-bit-mantissa part of ratio; n*hi_ is exact
    double lo_ = 0.0;
};

double wrap_to_pi(double angle_rad);

} // namespace spcr

#endif
