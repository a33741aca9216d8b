#include "spcradar/window.hpp"

#include <cmath>
#include <numbers>

namespace spcr {

std::vector<double> hann_window(std::size_t n, WindowShape shape) {
    std::vector<double> w(n, 1.0);
    if (n < 2) return w;
    const double denom =
        (shape == WindowShape::symmetric) ? static_cast<double>(n - 1) : static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom));
    }
    return w;
}

std::vector<double> make_window(Window kind, std::size_t n, WindowShape shape) {
    if (kind == Window::rect) return std::vector<double>(n, 1.0);
    return hann_window(n, shape);
}

} // namespace spcr
