#include "friedrichs/scattering.hpp"

#include "friedrichs/errors.hpp"
#include "friedrichs/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace friedrichs {

namespace {

constexpr const char* kModule = "scattering";
constexpr std::size_t kMaxExceptional = 8;
constexpr double kRefineTurn = 0.1 * std::numbers::pi;
constexpr int kMaxRefineDepth = 40;

void check_compatible(const SampledFunction& u, const BoundaryValues& bv)
{
    if (!(u.grid == bv.grid) || bv.plus.size() != u.values.size()) {
        throw ConfigError(kModule, "boundary values and potential live on different grids",
                          std::to_string(bv.plus.size()));
    }
}

double principal_arg_step(cplx from, cplx to)
{
    return std::arg(to / from);
}

} // namespace

std::vector<double> unwrap_phase(std::span<const cplx> S, double max_step)
{
    std::vector<double> phase(S.size());
    if (S.empty()) {
        return phase;
    }
    phase[0] = std::arg(S[0]);
    for (std::size_t k = 1; k < S.size(); ++k) {
        const double step = principal_arg_step(S[k - 1], S[k]);
        if (std::abs(step) >= max_step) {
            throw NumericalError(kModule,
                                 "phase step between adjacent samples too large; grid too coarse near a resonance",
                                 format_value(step));
        }
        phase[k] = phase[k - 1] + step;
    }
    return phase;
}

int winding_number(std::span<const cplx> S, cplx endpoint_value, const WindingOptions& options)
{
    if (S.empty()) {
        return 0;
    }
    for (const auto& s : S) {
        if (std::abs(std::abs(s) - 1.0) > options.modulus_tolerance) {
            throw NumericalError(kModule, "S is not unimodular", format_value(std::abs(s)));
        }
    }
    const double left = std::abs(S.front() - endpoint_value);
    const double right = std::abs(S.back() - endpoint_value);
    if (left > options.endpoint_tolerance || right > options.endpoint_tolerance) {
        throw NumericalError(kModule, "S too far from its limit at the grid ends; enlarge L",
                             format_value(std::max(left, right)));
    }
    const auto phase = unwrap_phase(S, options.max_step);
    const double total = principal_arg_step(endpoint_value, S.front()) + (phase.back() - phase.front()) +
                         principal_arg_step(S.back(), endpoint_value);
    const double turns = total / (2.0 * std::numbers::pi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > options.integer_tolerance) {
        throw NumericalError(kModule, "closed phase is not an integer number of turns", format_value(turns));
    }
    return static_cast<int>(rounded);
}

namespace {

// Inserts points into cells where D = 1 - I_+ turns quickly. D stays in the
// closed upper half plane, so its phase step between two samples is never
// ambiguous, while the step of S = conj(D)/D can alias by 2 pi.
void build_phase_path(const SampledFunction& u, const BoundaryValues& bv, const std::vector<bool>& masked,
                      ScatteringData& out)
{
    const UniformGrid& g = u.grid;
    const std::size_t n = g.size();
    const std::size_t half = g.half_size();
    const double limit = g.half_width() - g.spacing();
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) {
        w[k] = std::norm(u.values[k]);
    }
    auto d_at = [&](double x) {
        const cplx uu = uniform_cubic(u.values, g.point(0), g.spacing(), x);
        return cplx(1.0 - principal_value_integral(g, w, x), std::numbers::pi * std::norm(uu));
    };

    std::vector<double> extra;
    auto refine = [&](auto&& self, double xa, cplx da, double xb, cplx db, int depth) -> void {
        if (depth >= kMaxRefineDepth || std::abs(std::arg(db / da)) <= kRefineTurn) {
            return;
        }
        const double xm = 0.5 * (xa + xb);
        const cplx dm = d_at(xm);
        if (std::abs(dm) <= kExceptionalTolerance) {
            return;
        }
        extra.push_back(std::abs(xm));
        self(self, xa, da, xm, dm, depth + 1);
        self(self, xm, dm, xb, db, depth + 1);
    };
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double xa = g.point(k);
        const double xb = g.point(k + 1);
        if (masked[k] || masked[k + 1] || std::abs(xa) >= limit || std::abs(xb) >= limit) {
            continue;
        }
        const cplx da = 1.0 - bv.plus[k];
        const cplx db = 1.0 - bv.plus[k + 1];
        if (std::abs(std::arg(db / da)) > kRefineTurn) {
            ++out.refined_cells;
            refine(refine, xa, da, xb, db, 0);
        }
    }
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());

    auto s_at = [&](double x) {
        const cplx d = d_at(x);
        return std::abs(d) <= kExceptionalTolerance ? cplx(1.0, 0.0) : std::conj(d) / d;
    };
    out.path_points.clear();
    out.path_s_minus.clear();
    out.path_s_plus.clear();
    std::size_t e = 0;
    for (std::size_t j = 0; j < half; ++j) {
        const double r = g.half_point(j);
        for (; e < extra.size() && extra[e] < r; ++e) {
            out.path_points.push_back(extra[e]);
            out.path_s_minus.push_back(s_at(-extra[e]));
            out.path_s_plus.push_back(s_at(extra[e]));
        }
        if (e < extra.size() && extra[e] == r) {
            ++e;
        }
        out.path_points.push_back(r);
        out.path_s_minus.push_back(out.S[half - 1 - j]);
        out.path_s_plus.push_back(out.S[half + j]);
    }
}

} // namespace

ScatteringData scattering_matrix(const SampledFunction& u, const BoundaryValues& bv, const WindingOptions& options)
{
    check_compatible(u, bv);
    const UniformGrid& g = u.grid;
    const std::size_t n = g.size();
    ScatteringData out{g, ComplexVector(n), {}, {}, {1.0, 0.0}, {}, std::nullopt, {}, {}, "local phase interpolation", {}, {}, {}, 0};

    std::vector<bool> masked(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx d = 1.0 - bv.plus[k];
        if (std::abs(d) <= kExceptionalTolerance) {
            masked[k] = true;
            out.exceptional_points.push_back(g.point(k));
            continue;
        }
        // conj(D)/D with D = 1 - I_+ equals 1 - 2 pi i |u|^2 / D.
        out.S[k] = 1.0 - cplx(0.0, 2.0 * std::numbers::pi * std::norm(u.values[k])) / d;
    }
    if (out.exceptional_points.size() > kMaxExceptional) {
        throw NumericalError(kModule, "more than 8 exceptional points", std::to_string(out.exceptional_points.size()));
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!masked[k]) {
            continue;
        }
        std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(k) - 1;
        std::size_t hi = k + 1;
        while (lo >= 0 && masked[static_cast<std::size_t>(lo)]) {
            --lo;
        }
        while (hi < n && masked[hi]) {
            ++hi;
        }
        if (lo < 0 && hi >= n) {
            out.S[k] = 1.0;
        } else if (lo < 0) {
            out.S[k] = out.S[hi];
        } else if (hi >= n) {
            out.S[k] = out.S[static_cast<std::size_t>(lo)];
        } else {
            const cplx a = out.S[static_cast<std::size_t>(lo)];
            const cplx b = out.S[hi];
            const double t = (g.point(k) - g.point(static_cast<std::size_t>(lo))) /
                             (g.point(hi) - g.point(static_cast<std::size_t>(lo)));
            out.S[k] = a * std::polar(1.0, t * principal_arg_step(a, b));
        }
    }

    const std::size_t half = g.half_size();
    out.s_even.resize(half);
    out.s_odd.resize(half);
    for (std::size_t j = 0; j < half; ++j) {
        const cplx sp = out.S[half + j];
        const cplx sm = out.S[half - 1 - j];
        out.s_even[j] = 0.5 * (sp + sm);
        out.s_odd[j] = 0.5 * (sp - sm);
    }
    if (half >= 2) {
        // Four-point midpoint interpolation of D = 1 - I_+ at the origin.
        const cplx d0 = (9.0 * ((1.0 - bv.plus[half - 1]) + (1.0 - bv.plus[half])) -
                         ((1.0 - bv.plus[half - 2]) + (1.0 - bv.plus[half + 1]))) /
                        16.0;
        out.s_at_zero = std::abs(d0) > kExceptionalTolerance ? std::conj(d0) / d0 : 0.5 * (out.S[half - 1] + out.S[half]);
    }

    build_phase_path(u, bv, masked, out);
    ComplexVector line;
    line.reserve(2 * out.path_points.size());
    line.insert(line.end(), out.path_s_minus.rbegin(), out.path_s_minus.rend());
    line.insert(line.end(), out.path_s_plus.begin(), out.path_s_plus.end());
    try {
        const auto phase = unwrap_phase(line, options.max_step);
        // Grid points are path points; pick their phases back out.
        out.unwrapped_phase.resize(n);
        const std::size_t m = out.path_points.size();
        std::size_t j = 0;
        for (std::size_t p = 0; p < m && j < half; ++p) {
            if (out.path_points[p] == g.half_point(j)) {
                out.unwrapped_phase[half + j] = phase[m + p];
                out.unwrapped_phase[half - 1 - j] = phase[m - 1 - p];
                ++j;
            }
        }
        out.winding = winding_number(line, {1.0, 0.0}, options);
    } catch (const NumericalError& e) {
        out.winding_failure = e.what();
    }
    return out;
}

PsiWeight psi_weight(const SampledFunction& u, const BoundaryValues& bv)
{
    check_compatible(u, bv);
    const std::size_t n = u.grid.size();
    PsiWeight out{u.grid, ComplexVector(n), std::vector<bool>(n, false)};
    for (std::size_t k = 0; k < n; ++k) {
        const cplx d = 1.0 - bv.plus[k];
        if (std::abs(d) <= kExceptionalTolerance) {
            out.mask[k] = true;
            continue;
        }
        out.values[k] = std::conj(u.values[k]) / d;
    }
    return out;
}

} // namespace friedrichs
