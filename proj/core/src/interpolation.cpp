#include "friedrichs/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace friedrichs {

CubicStencil uniform_cubic_stencil(double x0, double h, double x)
{
    const double pos = (x - x0) / h;
    const double cell = std::floor(pos);
    const double t = pos - cell;
    CubicStencil st;
    st.first = static_cast<std::ptrdiff_t>(cell) - 1;
    st.weights[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
    st.weights[1] = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    st.weights[2] = -(t + 1.0) * t * (t - 2.0) / 2.0;
    st.weights[3] = (t + 1.0) * t * (t - 1.0) / 6.0;
    return st;
}

std::complex<double> uniform_cubic(std::span<const std::complex<double>> values, double x0, double h,
                                   double x)
{
    return apply_stencil(values, uniform_cubic_stencil(x0, h, x));
}

double uniform_cubic(std::span<const double> values, double x0, double h, double x)
{
    return apply_stencil(values, uniform_cubic_stencil(x0, h, x));
}

namespace {

std::complex<double> third_divided_difference(std::span<const double> xs,
                                              std::span<const std::complex<double>> ys, std::size_t s)
{
    std::array<std::complex<double>, 4> dd{ys[s], ys[s + 1], ys[s + 2], ys[s + 3]};
    for (std::size_t order = 1; order < 4; ++order) {
        for (std::size_t i = 3; i >= order; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[s + i] - xs[s + i - order]);
        }
    }
    return dd[3];
}

std::complex<double> lagrange4(std::span<const double> xs, std::span<const std::complex<double>> ys,
                               std::size_t s, double x)
{
    std::complex<double> acc{};
    for (std::size_t i = 0; i < 4; ++i) {
        double w = 1.0;
        for (std::size_t j = 0; j < 4; ++j) {
            if (j != i) {
                w *= (x - xs[s + j]) / (xs[s + i] - xs[s + j]);
            }
        }
        acc += w * ys[s + i];
    }
    return acc;
}

} // namespace

std::complex<double> eno_cubic(std::span<const double> xs, std::span<const std::complex<double>> ys,
                               double x)
{
    const std::size_t n = xs.size();
    if (n < 4 || x < xs.front() || x > xs.back()) {
        return {};
    }
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t cell = static_cast<std::size_t>(std::distance(xs.begin(), it));
    cell = std::clamp<std::size_t>(cell == 0 ? 0 : cell - 1, 0, n - 2);
    if (x == xs[cell]) {
        return ys[cell];
    }
    if (x == xs[cell + 1]) {
        return ys[cell + 1];
    }

    // candidate stencils [s, s+3] containing [cell, cell+1]
    std::size_t best = n;
    double best_dd = std::numeric_limits<double>::infinity();
    const std::size_t lo = cell >= 2 ? cell - 2 : 0;
    for (std::size_t s = lo; s <= cell && s + 3 < n; ++s) {
        const double dd = std::abs(third_divided_difference(xs, ys, s));
        // prefer the centred stencil on ties
        const bool centred = (s + 1 == cell);
        if (dd < best_dd || (dd == best_dd && centred)) {
            best_dd = dd;
            best = s;
        }
    }
    if (best == n) {
        best = std::min(cell > 0 ? cell - 1 : 0, n - 4);
    }
    return lagrange4(xs, ys, best, x);
}

} // namespace friedrichs
