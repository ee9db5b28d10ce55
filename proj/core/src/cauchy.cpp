#include "friedrichs/cauchy.hpp"

#include "friedrichs/errors.hpp"
#include "friedrichs/interpolation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace friedrichs {

namespace {

constexpr const char* kModule = "cauchy";
constexpr double kEndDecay = 1e-6;

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kGlNodes{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                          -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                          0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeights{0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                            0.2223810344533745, 0.1012285362903763};

double pv_at_index(const UniformGrid& grid, std::span<const double> w, std::size_t j)
{
    const std::size_t n = grid.size();
    const double L = grid.half_width();
    const double x = grid.point(j);
    const double wj = w[j];
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k != j) {
            // dx / (x_j - x_k) = 1 / (j - k)
            acc += (w[k] - wj) / (static_cast<double>(j) - static_cast<double>(k));
        }
    }
    // Own cell: (w(y) - w(x)) / (x - y) -> -w'(x), times dx; five-point
    // derivative, w taken as zero beyond the grid.
    auto at = [&](std::ptrdiff_t k) {
        return k >= 0 && k < static_cast<std::ptrdiff_t>(n) ? w[static_cast<std::size_t>(k)] : 0.0;
    };
    const auto jj = static_cast<std::ptrdiff_t>(j);
    acc -= (8.0 * (at(jj + 1) - at(jj - 1)) - (at(jj + 2) - at(jj - 2))) / 12.0;
    return acc + wj * std::log((x + L) / (L - x));
}

} // namespace

std::vector<double> principal_value_on_grid(const UniformGrid& grid, std::span<const double> w)
{
    if (w.size() != grid.size()) {
        throw ConfigError(kModule, "density length must equal grid size", std::to_string(w.size()));
    }
    std::vector<double> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        out[j] = pv_at_index(grid, w, j);
    }
    return out;
}

double principal_value_integral(const UniformGrid& grid, std::span<const double> w, double x)
{
    if (w.size() != grid.size()) {
        throw ConfigError(kModule, "density length must equal grid size", std::to_string(w.size()));
    }
    const double L = grid.half_width();
    const double dx = grid.spacing();
    if (!(std::abs(x) < L - dx)) {
        throw ConfigError(kModule, "evaluation point within one grid spacing of +-L; enlarge L", format_value(x));
    }
    const std::size_t j = grid.nearest_index(x);
    if (std::abs(grid.point(j) - x) <= 1e-12 * dx) {
        return pv_at_index(grid, w, j);
    }

    // PV int w(y)/(x-y) dy = int_0^T [w(x-t) - w(x+t)] / t dt; the integrand is
    // a piecewise cubic over 1/t with breaks at |x - x_k|.
    const double x0 = grid.point(0);
    auto wi = [&](double y) { return uniform_cubic(w, x0, dx, y); };
    const double frac = (x - x0) / dx - std::floor((x - x0) / dx);
    const double first = frac * dx;
    const double second = (1.0 - frac) * dx;
    std::vector<double> breaks{0.0};
    const double t_end = L + std::abs(x) + 2.0 * dx;
    double a = std::min(first, second);
    double b = std::max(first, second);
    while (a < t_end) {
        if (a > breaks.back()) {
            breaks.push_back(a);
        }
        if (b > breaks.back() && b < t_end) {
            breaks.push_back(b);
        }
        a += dx;
        b += dx;
    }
    breaks.push_back(t_end);

    double acc = 0.0;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double lo = breaks[p];
        const double hi = breaks[p + 1];
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (std::size_t q = 0; q < kGlNodes.size(); ++q) {
            const double t = mid + half * kGlNodes[q];
            acc += half * kGlWeights[q] * (wi(x - t) - wi(x + t)) / t;
        }
    }
    return acc;
}

BoundaryValues boundary_values(const SampledFunction& u)
{
    const UniformGrid& g = u.grid;
    std::vector<double> w(g.size());
    double peak = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        w[k] = std::norm(u.values[k]);
        peak = std::max(peak, w[k]);
    }
    const double ends = std::max(w.front(), w.back());
    if (ends > kEndDecay * peak) {
        throw ConfigError(kModule, "|u|^2 at the grid ends exceeds 1e-6 of its maximum; enlarge L",
                          format_value(ends / peak));
    }
    BoundaryValues bv{g, ComplexVector(g.size()), ComplexVector(g.size()), principal_value_on_grid(g, w)};
    for (std::size_t k = 0; k < g.size(); ++k) {
        bv.plus[k] = {bv.pv[k], -std::numbers::pi * w[k]};
        bv.minus[k] = std::conj(bv.plus[k]);
    }
    return bv;
}

EpsilonOracle epsilon_limit_oracle(const SampledFunction& u, double x, std::span<const double> eps_schedule)
{
    const UniformGrid& g = u.grid;
    if (eps_schedule.empty()) {
        throw ConfigError(kModule, "epsilon schedule is empty", "");
    }
    for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
        if (eps_schedule[i] < g.spacing()) {
            throw ConfigError(kModule, "epsilon below the grid spacing", format_value(eps_schedule[i]));
        }
        if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1])) {
            throw ConfigError(kModule, "epsilon schedule must be strictly decreasing", format_value(eps_schedule[i]));
        }
    }
    EpsilonOracle out;
    out.eps.assign(eps_schedule.begin(), eps_schedule.end());
    for (double eps : eps_schedule) {
        cplx acc{};
        for (std::size_t k = 0; k < g.size(); ++k) {
            acc += std::norm(u.values[k]) / cplx(x - g.point(k), eps);
        }
        out.raw.push_back(g.spacing() * acc);
    }

    // Neville recursion towards eps = 0.
    const std::size_t m = out.raw.size();
    out.table.assign(m, std::vector<cplx>(m));
    out.table[0] = out.raw;
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = j; i < m; ++i) {
            const double e_old = out.eps[i - j];
            const double e_new = out.eps[i];
            out.table[j][i] = (e_old * out.table[j - 1][i] - e_new * out.table[j - 1][i - 1]) / (e_old - e_new);
        }
    }
    for (std::size_t i = 2; i < m; ++i) {
        const double prev = std::abs(out.raw[i - 1] - out.raw[i - 2]);
        const double curr = std::abs(out.raw[i] - out.raw[i - 1]);
        if (curr > prev && curr > 1e-14 * (1.0 + std::abs(out.raw[i]))) {
            throw NumericalError(kModule, "epsilon table does not contract; grid too coarse for the schedule",
                                 format_value(curr / prev));
        }
    }
    out.value = out.table[m - 1][m - 1];
    return out;
}

} // namespace friedrichs
