#pragma once

#include "friedrichs/grid.hpp"

#include <span>
#include <vector>

namespace friedrichs {

// I_+-(x) = lim_{eps -> 0} int |u(y)|^2 / (x - y +- i eps) dy on the grid.
struct BoundaryValues {
    UniformGrid grid;
    ComplexVector plus;
    ComplexVector minus;
    std::vector<double> pv;
};

// PV int w(y) / (x - y) dy for samples w of a density vanishing outside
// [-L, L]. Grid points use singularity subtraction; other x integrate the
// cubic interpolant of w panel by panel. Rejects x within dx of +-L.
double principal_value_integral(const UniformGrid& grid, std::span<const double> w, double x);

// The same rule at every grid point, ends included.
std::vector<double> principal_value_on_grid(const UniformGrid& grid, std::span<const double> w);

// Requires |u|^2 <= 1e-6 max|u|^2 at both grid ends.
BoundaryValues boundary_values(const SampledFunction& u);

struct EpsilonOracle {
    cplx value;
    std::vector<double> eps;
    std::vector<cplx> raw;                 // I_+^eps by midpoint quadrature
    std::vector<std::vector<cplx>> table;  // Neville table, table[j][i] uses levels i-j..i
};

// Extrapolates I_+^eps(x) to eps = 0 through a polynomial in eps. Throws
// NumericalError when successive extrapolants do not settle.
EpsilonOracle epsilon_limit_oracle(const SampledFunction& u, double x, std::span<const double> eps_schedule);

} // namespace friedrichs
