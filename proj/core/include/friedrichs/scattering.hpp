#pragma once

#include "friedrichs/cauchy.hpp"
#include "friedrichs/grid.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace friedrichs {

struct WindingOptions {
    double endpoint_tolerance = 0.2;
    double integer_tolerance = 0.15;  // in turns
    double max_step = 0.9 * 3.14159265358979323846;
    double modulus_tolerance = 1e-6;
};

struct ScatteringData {
    UniformGrid grid;
    ComplexVector S;
    ComplexVector s_even;  // half grid
    ComplexVector s_odd;
    cplx s_at_zero{1.0, 0.0};
    std::vector<double> unwrapped_phase;  // grid points, taken from the refined path
    std::optional<int> winding;
    std::string winding_failure;  // set when winding is empty
    std::vector<double> exceptional_points;
    std::string exceptional_fill = "local phase interpolation";

    // Phase path on the half line: the half grid plus points inserted where
    // arg(1 - I_+) turns by more than a tenth of pi within one cell, so that
    // resonances narrower than the grid spacing are followed. S(-x) and S(x)
    // are both kept at every path point.
    std::vector<double> path_points;
    ComplexVector path_s_minus;  // S(-x)
    ComplexVector path_s_plus;   // S(x)
    std::size_t refined_cells = 0;
};

struct PsiWeight {
    UniformGrid grid;
    ComplexVector values;
    std::vector<bool> mask;
};

// |1 - I_+| at or below this marks a point as exceptional.
inline constexpr double kExceptionalTolerance = 1e-8;

ScatteringData scattering_matrix(const SampledFunction& u, const BoundaryValues& bv,
                                 const WindingOptions& options = {});

// Phase of S along the grid, starting from arg S(first) in (-pi, pi].
std::vector<double> unwrap_phase(std::span<const cplx> S, double max_step);

// Counter-clockwise turns of S closed through endpoint_value at both ends.
int winding_number(std::span<const cplx> S, cplx endpoint_value = {1.0, 0.0}, const WindingOptions& options = {});

PsiWeight psi_weight(const SampledFunction& u, const BoundaryValues& bv);

} // namespace friedrichs
