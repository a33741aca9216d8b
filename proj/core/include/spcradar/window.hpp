#ifndef SPCRADAR_WINDOW_HPP
#define SPCRADAR_WINDOW_HPP

#include <cstddef>
#include <vector>

namespace spcr {

enum class Window {
    rect,
    hann,
};

enum class WindowShape {
    symmetric, // peak-centered; used for single-shot parameter estimation
    periodic,  // DFT-even; used for averaged spectra
};

std::vector<double> hann_window(std::size_t n, WindowShape shape);

std::vector<double> make_window(Window kind, std::size_t n, WindowShape shape);

} // namespace spcr

#endif
