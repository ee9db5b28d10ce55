#pragma once

#include "friedrichs/dilation.hpp"
#include "friedrichs/scattering.hpp"

#include <array>
#include <string>
#include <vector>

namespace friedrichs {

// Gamma(x, y) = 1 + Phi(y) [[s_e(x) - 1, s_o(x)], [s_o(x), s_e(x) - 1]].
Matrix2c boundary_symbol_value(cplx s_even, cplx s_odd, double y);

struct EdgeCurve {
    std::string name;
    std::string parameter_name;     // "x" or "y"
    std::vector<double> parameter;  // may contain +-infinity
    std::vector<Matrix2c> values;
    ComplexVector determinant;
};

struct BoundarySymbolOptions {
    double y_cutoff = 40.0;
    std::size_t y_points = 401;
    WindingOptions winding;
};

struct BoundarySymbolReport {
    // gamma1 = Gamma(0, .), gamma2 = Gamma(., +inf), gamma3 = Gamma(+inf, .), gamma4 = Gamma(., -inf)
    std::array<EdgeCurve, 4> edges;
    int square_winding = 0;
    std::string orientation;
    double corner_mismatch = 0.0;
    double unitarity_defect = 0.0;
    double det_gamma1_defect = 0.0;  // max |det gamma1 - s_e(0)|
    double det_gamma3_defect = 0.0;  // max |det gamma3 - 1|
};

// Throws NumericalError on corner mismatch above 1e-6 or a non-integer winding.
BoundarySymbolReport boundary_symbol(const ScatteringData& S, const BoundarySymbolOptions& options = {});

} // namespace friedrichs
