#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace friedrichs {

// Four-point Lagrange stencil on a uniform grid x_k = x0 + k*h. Samples
// outside [0, n) are treated as zero.
struct CubicStencil {
    std::ptrdiff_t first = 0;
    std::array<double, 4> weights{};
};

CubicStencil uniform_cubic_stencil(double x0, double h, double x);

template <typename T>
T apply_stencil(std::span<const T> values, const CubicStencil& st)
{
    T acc{};
    const auto n = static_cast<std::ptrdiff_t>(values.size());
    for (std::ptrdiff_t i = 0; i < 4; ++i) {
        const std::ptrdiff_t k = st.first + i;
        if (k >= 0 && k < n) {
            acc += st.weights[static_cast<std::size_t>(i)] * values[static_cast<std::size_t>(k)];
        }
    }
    return acc;
}

std::complex<double> uniform_cubic(std::span<const std::complex<double>> values, double x0, double h,
                                   double x);
double uniform_cubic(std::span<const double> values, double x0, double h, double x);

// Cubic interpolation on strictly increasing, possibly non-uniform nodes.
// Among the 4-point stencils containing the target cell, the one with the
// smallest third divided difference is used (ENO selection), so kinks sitting
// on nodes do not pollute neighbouring cells. Outside [xs.front(), xs.back()]
// the result is zero.
std::complex<double> eno_cubic(std::span<const double> xs, std::span<const std::complex<double>> ys,
                               double x);

} // namespace friedrichs
