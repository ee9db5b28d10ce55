#include "friedrichs/boundary_symbol.hpp"

#include "friedrichs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace friedrichs {

namespace {

constexpr const char* kModule = "waveop";
constexpr double kCornerTolerance = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix2c symbol_for(const Matrix2c& phi_y, cplx se, cplx so)
{
    Matrix2c m;
    m << se - 1.0, so, so, se - 1.0;
    return Matrix2c::Identity() + phi_y * m;
}

EdgeCurve y_edge(std::string name, cplx se, cplx so, const BoundarySymbolOptions& opt)
{
    const DilationMultiplier Phi = projection_symbol();
    EdgeCurve e{std::move(name), "y", {}, {}, {}};
    e.parameter.push_back(-kInf);
    for (std::size_t i = 0; i < opt.y_points; ++i) {
        const double t = opt.y_points == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(opt.y_points - 1);
        e.parameter.push_back(-opt.y_cutoff + 2.0 * opt.y_cutoff * t);
    }
    e.parameter.push_back(kInf);
    for (double y : e.parameter) {
        e.values.push_back(symbol_for(Phi(y), se, so));
        e.determinant.push_back(e.values.back().determinant());
    }
    return e;
}

EdgeCurve x_edge(std::string name, const ScatteringData& S, double y)
{
    const Matrix2c phi_y = projection_symbol()(y);
    EdgeCurve e{std::move(name), "x", {}, {}, {}};
    auto push = [&](double x, cplx se, cplx so) {
        e.parameter.push_back(x);
        e.values.push_back(symbol_for(phi_y, se, so));
        e.determinant.push_back(e.values.back().determinant());
    };
    push(0.0, S.s_at_zero, 0.0);
    for (std::size_t p = 0; p < S.path_points.size(); ++p) {
        const cplx plus = S.path_s_plus[p];
        const cplx minus = S.path_s_minus[p];
        push(S.path_points[p], 0.5 * (plus + minus), 0.5 * (plus - minus));
    }
    push(kInf, 1.0, 0.0);
    return e;
}

double mismatch(const Matrix2c& a, const Matrix2c& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace

Matrix2c boundary_symbol_value(cplx s_even, cplx s_odd, double y)
{
    return symbol_for(projection_symbol()(y), s_even, s_odd);
}

BoundarySymbolReport boundary_symbol(const ScatteringData& S, const BoundarySymbolOptions& options)
{
    if (!(options.y_cutoff > 0.0) || options.y_points < 2) {
        throw ConfigError(kModule, "boundary symbol needs y_cutoff > 0 and at least 2 y points",
                          format_value(options.y_cutoff));
    }
    BoundarySymbolReport rep;
    auto& [g1, g2, g3, g4] = rep.edges;
    g1 = y_edge("gamma1", S.s_at_zero, 0.0, options);
    g2 = x_edge("gamma2", S, kInf);
    g3 = y_edge("gamma3", 1.0, 0.0, options);
    g4 = x_edge("gamma4", S, -kInf);

    rep.corner_mismatch = std::max({mismatch(g2.values.front(), g1.values.back()),
                                    mismatch(g1.values.front(), g4.values.front()),
                                    mismatch(g4.values.back(), g3.values.front()),
                                    mismatch(g3.values.back(), g2.values.back())});
    if (rep.corner_mismatch > kCornerTolerance) {
        throw NumericalError(kModule, "boundary symbol edges disagree at a corner", format_value(rep.corner_mismatch));
    }
    for (const auto& e : rep.edges) {
        for (const auto& m : e.values) {
            rep.unitarity_defect =
                std::max(rep.unitarity_defect, (m.adjoint() * m - Matrix2c::Identity()).cwiseAbs().maxCoeff());
        }
    }
    for (const auto& d : g1.determinant) {
        rep.det_gamma1_defect = std::max(rep.det_gamma1_defect, std::abs(d - S.s_at_zero));
    }
    for (const auto& d : g3.determinant) {
        rep.det_gamma3_defect = std::max(rep.det_gamma3_defect, std::abs(d - 1.0));
    }

    // Closed loop: gamma2 with x from +inf to 0, gamma1 with y from +inf to -inf,
    // gamma4 with x from 0 to +inf, gamma3 with y from -inf to +inf. In the
    // inverted coordinate x' = 1/x this is gamma2 from x' = 0 to +inf and gamma4
    // from x' = +inf to 0, and the loop reproduces the line orientation of S.
    ComplexVector loop;
    loop.insert(loop.end(), g2.determinant.rbegin(), g2.determinant.rend());
    loop.insert(loop.end(), g1.determinant.rbegin(), g1.determinant.rend());
    loop.insert(loop.end(), g4.determinant.begin(), g4.determinant.end());
    loop.insert(loop.end(), g3.determinant.begin(), g3.determinant.end());
    rep.square_winding = winding_number(loop, loop.front(), options.winding);
    rep.orientation = "gamma2 x:+inf->0, gamma1 y:+inf->-inf, gamma4 x:0->+inf, gamma3 y:-inf->+inf "
                      "(x' = 1/x runs 0->+inf on gamma2 and +inf->0 on gamma4); sign fixed by agreement with "
                      "the line winding of S";
    return rep;
}

} // namespace friedrichs
