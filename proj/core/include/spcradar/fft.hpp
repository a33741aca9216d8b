#ifndef SPCRADAR_FFT_HPP
#define SPCRADAR_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spcr::fft {

/// Real-to-complex forward transform. Input is zero-padded to nfft
/// (nfft >= in.size()); returns nfft/2 + 1 unnormalized bins.
std::vector<std::complex<double>> rfft(std::span<const double> in, std::size_t nfft);

/// Complex-to-real inverse of rfft. spec.size() must equal n/2 + 1.
/// Unnormalized (irfft(rfft(x)) == n * x), matching the forward transform.
std::vector<double> irfft(std::span<const std::complex<double>> spec, std::size_t n);

} // namespace spcr::fft

#endif
