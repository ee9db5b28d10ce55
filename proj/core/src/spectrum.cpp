#include "friedrichs/spectrum.hpp"

#include "friedrichs/errors.hpp"
#include "friedrichs/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace friedrichs {

namespace {

constexpr const char* kModule = "spectrum";
constexpr double kRootResidual = 1e-8;

struct Context {
    const UniformGrid& grid;
    const SampledFunction& u;
    const BoundaryValues& bv;
    std::vector<double> w;
    double peak = 0.0;
    double tol = 0.0;

    Context(const SampledFunction& u_, const BoundaryValues& bv_) : grid(u_.grid), u(u_), bv(bv_), w(u_.grid.size())
    {
        if (!(u.grid == bv.grid)) {
            throw ConfigError(kModule, "boundary values and potential live on different grids",
                              std::to_string(bv.grid.size()));
        }
        for (std::size_t k = 0; k < w.size(); ++k) {
            w[k] = std::norm(u.values[k]);
            peak = std::max(peak, std::abs(u.values[k]));
        }
    }

    cplx u_at(double x) const { return uniform_cubic(u.values, grid.point(0), grid.spacing(), x); }

    // 1 - PV integral; near the grid ends fall back to the nearest grid value.
    double g_at(double x) const
    {
        if (std::abs(x) < grid.half_width() - grid.spacing()) {
            return 1.0 - principal_value_integral(grid, w, x);
        }
        return 1.0 - bv.pv[grid.nearest_index(x)];
    }

    bool in_zero_set(std::size_t k) const { return std::abs(u.values[k]) <= tol; }
};

// Distance from the last nonzero sample to the support edge, assuming
// |u| ~ A (edge - x)^p there. y1, y2, y3 are |u| at the last three samples,
// y3 nearest the edge; the result lies in (0, dx].
double power_law_edge_offset(double y1, double y2, double y3, double dx)
{
    if (!(y1 > y2 && y2 > y3 && y3 > 0.0)) {
        return dx;
    }
    auto ratio = [dx](double t) { return std::log(t / (t + dx)) / std::log((t + dx) / (t + 2.0 * dx)); };
    const double observed = std::log(y3 / y2) / std::log(y2 / y1);
    if (observed <= ratio(dx)) {
        return dx;
    }
    double a = 1e-12 * dx;
    double b = dx;
    for (int it = 0; it < 200 && b - a > 1e-15 * dx; ++it) {
        const double m = 0.5 * (a + b);
        (ratio(m) > observed ? a : b) = m;
    }
    return 0.5 * (a + b);
}

struct Component {
    std::size_t k0 = 0;
    std::size_t k1 = 0;
    double left = 0.0;
    double right = 0.0;
    bool left_fitted = false;   // edge placed by the power-law model
    bool right_fitted = false;
};

// |u(x)| from the cubic interpolant, except inside a zero-set component where
// the bracketing samples vanish exactly or x lies between a fitted support
// edge and the first vanishing sample; the interpolant overshoots there.
double modulus_at(const Context& ctx, const std::vector<Component>& zs, double x)
{
    const UniformGrid& g = ctx.grid;
    for (const Component& c : zs) {
        if (x < c.left || x > c.right) {
            continue;
        }
        if ((c.left_fitted && x <= g.point(c.k0)) || (c.right_fitted && x >= g.point(c.k1))) {
            return 0.0;
        }
        const double cell = (x - g.point(0)) / g.spacing();
        const auto k = static_cast<std::size_t>(std::clamp(std::floor(cell), 0.0, static_cast<double>(g.size() - 2)));
        if (k >= c.k0 && k + 1 <= c.k1 && ctx.u.values[k] == 0.0 && ctx.u.values[k + 1] == 0.0) {
            return 0.0;
        }
    }
    return std::abs(ctx.u_at(x));
}

double bisect(const std::function<double(double)>& f, double a, double b, double fa, double width)
{
    while (b - a > width) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) {
            return m;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

void add_unique(std::vector<double>& roots, double r, double width)
{
    for (double q : roots) {
        if (std::abs(q - r) <= 4.0 * width) {
            return;
        }
    }
    roots.push_back(r);
}

std::vector<Component> zero_set_components(const Context& ctx, double root_tolerance)
{
    const UniformGrid& g = ctx.grid;
    const std::size_t n = g.size();
    const double dx = g.spacing();
    auto abs_u_minus_tol = [&](double x) { return std::abs(ctx.u_at(x)) - ctx.tol; };
    auto mag = [&](std::size_t k) { return std::abs(ctx.u.values[k]); };
    std::vector<Component> out;
    std::size_t k = 0;
    while (k < n) {
        if (!ctx.in_zero_set(k)) {
            ++k;
            continue;
        }
        Component c;
        c.k0 = k;
        while (k + 1 < n && ctx.in_zero_set(k + 1)) {
            ++k;
        }
        c.k1 = k;
        ++k;
        c.left = g.point(c.k0);
        c.right = g.point(c.k1);
        // Exactly vanishing samples mark a compactly supported u whose edge
        // the cubic interpolant cannot locate inside one cell.
        if (c.k0 >= 3 && mag(c.k0) == 0.0) {
            c.left = g.point(c.k0 - 1) + power_law_edge_offset(mag(c.k0 - 3), mag(c.k0 - 2), mag(c.k0 - 1), dx);
            c.left_fitted = true;
        } else if (c.k0 > 0) {
            const double a = g.point(c.k0 - 1);
            c.left = bisect(abs_u_minus_tol, a, c.left, abs_u_minus_tol(a), root_tolerance);
        }
        if (c.k1 + 3 < n && mag(c.k1) == 0.0) {
            c.right = g.point(c.k1 + 1) - power_law_edge_offset(mag(c.k1 + 3), mag(c.k1 + 2), mag(c.k1 + 1), dx);
            c.right_fitted = true;
        } else if (c.k1 + 1 < n) {
            const double b = g.point(c.k1 + 1);
            c.right = bisect(abs_u_minus_tol, c.right, b, abs_u_minus_tol(c.right), root_tolerance);
        }
        out.push_back(c);
    }
    return out;
}

} // namespace

EigenvalueReport eigenvalue_search(const SampledFunction& u, const BoundaryValues& bv, const SpectrumOptions& options)
{
    Context ctx(u, bv);
    ctx.tol = options.zero_tolerance * ctx.peak;
    const UniformGrid& g = ctx.grid;
    const std::size_t n = g.size();
    EigenvalueReport report;
    auto gfun = [&](double x) { return ctx.g_at(x); };

    struct Root {
        double lambda;
        double left;
        double right;
        bool left_is_end;
        bool right_is_end;
    };
    std::vector<Root> roots;

    const std::vector<Component> zs = zero_set_components(ctx, options.root_tolerance);
    for (const Component& c : zs) {
        const std::size_t k0 = c.k0;
        const std::size_t k1 = c.k1;
        const double left = c.left;
        const double right = c.right;
        if ((k0 == 0 && 1.0 - bv.pv[0] <= 0.0) || (k1 == n - 1 && 1.0 - bv.pv[n - 1] <= 0.0)) {
            throw NumericalError(kModule,
                                 "zero set touches the grid boundary with 1 - PV <= 0 there; a root may lie outside "
                                 "[-L, L], enlarge L",
                                 format_value(k0 == 0 ? g.point(0) : g.point(n - 1)));
        }
        report.zero_set.emplace_back(left, right);

        // Scan with the grid rule, confirm and bisect with the continuous one.
        std::vector<double> xs{left};
        std::vector<double> gs{ctx.g_at(left)};
        for (std::size_t q = k0; q <= k1; ++q) {
            if (g.point(q) > left && g.point(q) < right) {
                xs.push_back(g.point(q));
                gs.push_back(1.0 - bv.pv[q]);
            }
        }
        if (right > left) {
            xs.push_back(right);
            gs.push_back(ctx.g_at(right));
        }
        std::vector<double> found;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            if ((gs[i] < 0.0) == (gs[i + 1] < 0.0) && gs[i] != 0.0) {
                continue;
            }
            std::size_t lo = i;
            std::size_t hi = i + 1;
            double ga = gfun(xs[lo]);
            double gb = gfun(xs[hi]);
            for (int widen = 0; widen < 2 && (ga < 0.0) == (gb < 0.0); ++widen) {
                if (std::abs(ga) < std::abs(gb) && lo > 0) {
                    --lo;
                    ga = gfun(xs[lo]);
                } else if (hi + 1 < xs.size()) {
                    ++hi;
                    gb = gfun(xs[hi]);
                }
            }
            if ((ga < 0.0) == (gb < 0.0)) {
                continue;
            }
            add_unique(found, bisect(gfun, xs[lo], xs[hi], ga, options.root_tolerance), options.root_tolerance);
        }
        for (double r : found) {
            roots.push_back({r, left, right, k0 == 0, k1 == n - 1});
        }
    }

    // Sign changes of Re u between samples outside the zero set.
    for (std::size_t q = 0; q + 1 < n; ++q) {
        if (ctx.in_zero_set(q) || ctx.in_zero_set(q + 1)) {
            continue;
        }
        const double a = u.values[q].real();
        const double b = u.values[q + 1].real();
        if ((a < 0.0) == (b < 0.0)) {
            continue;
        }
        auto re_u = [&](double x) { return ctx.u_at(x).real(); };
        const double r = bisect(re_u, g.point(q), g.point(q + 1), a, options.root_tolerance);
        const double gr = ctx.g_at(r);
        if (std::abs(gr) <= kRootResidual && std::abs(ctx.u_at(r)) <= options.zero_tolerance * ctx.peak) {
            roots.push_back({r, r, r, false, false});
        } else {
            report.non_eigenvalue_zeros.push_back(r);
        }
    }

    for (const Root& r : roots) {
        Eigenvalue ev;
        ev.lambda = r.lambda;
        ev.residual_u = modulus_at(ctx, zs, r.lambda);
        ev.residual_root = std::abs(ctx.g_at(r.lambda));
        ev.at_zero_set_edge = (!r.left_is_end && r.lambda - r.left < options.holder_radius) ||
                              (!r.right_is_end && r.right - r.lambda < options.holder_radius);
        try {
            ev.local_holder = holder_exponent_estimate(u, r.lambda, options.holder_radius).exponent;
        } catch (const Error&) {
            ev.local_holder.reset();
        }
        if (ev.at_zero_set_edge && !(ev.local_holder && *ev.local_holder > options.holder_threshold)) {
            ev.warning = "eigenvalue at the edge of the zero set with local Hoelder exponent not above " +
                         format_value(options.holder_threshold);
        }
        if (ev.residual_root > kRootResidual) {
            ev.warning += (ev.warning.empty() ? "" : "; ") + std::string("root residual above 1e-8");
        }
        report.eigenvalues.push_back(ev);
    }
    std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
              [](const Eigenvalue& a, const Eigenvalue& b) { return a.lambda < b.lambda; });
    report.exceptional = exceptional_points(u, bv, options);
    return report;
}

std::vector<double> exceptional_points(const SampledFunction& u, const BoundaryValues& bv,
                                       const SpectrumOptions& options)
{
    Context ctx(u, bv);
    ctx.tol = options.zero_tolerance * ctx.peak;
    const UniformGrid& g = ctx.grid;
    const std::size_t n = g.size();
    std::vector<double> out;
    if (ctx.peak == 0.0 || n < 4) {
        return out;
    }
    auto gfun = [&](double x) { return ctx.g_at(x); };
    const std::vector<Component> zs = zero_set_components(ctx, options.root_tolerance);
    for (std::size_t q = 1; q + 2 < n; ++q) {
        const double a = 1.0 - bv.pv[q];
        const double b = 1.0 - bv.pv[q + 1];
        if ((a < 0.0) == (b < 0.0)) {
            continue;
        }
        // Cheap filter: 1 - I_+ cannot be small where pi |u|^2 is not.
        const double wmin = std::min(ctx.w[q], ctx.w[q + 1]);
        if (std::numbers::pi * wmin > 1e3 * options.exceptional_tolerance) {
            continue;
        }
        const double ga = gfun(g.point(q));
        const double gb = gfun(g.point(q + 1));
        if ((ga < 0.0) == (gb < 0.0)) {
            continue;
        }
        const double r = bisect(gfun, g.point(q), g.point(q + 1), ga, options.root_tolerance);
        const double ur = modulus_at(ctx, zs, r);
        if (ur <= ctx.tol) {
            continue;
        }
        const double d = std::abs(cplx(ctx.g_at(r), std::numbers::pi * ur * ur));
        if (d <= options.exceptional_tolerance) {
            add_unique(out, r, options.root_tolerance);
        }
    }
    return out;
}

SweepResult coupling_sweep(const PotentialSpec& spec, const UniformGrid& grid, std::span<const double> couplings,
                           const SpectrumOptions& options, const WindingOptions& winding)
{
    for (std::size_t i = 0; i < couplings.size(); ++i) {
        if (!(couplings[i] > 0.0) || (i > 0 && !(couplings[i] > couplings[i - 1]))) {
            throw ConfigError(kModule, "couplings must be positive and strictly increasing", format_value(couplings[i]));
        }
    }
    const SampledPotential base = sample_potential(spec, grid);
    SweepResult result;
    for (double c : couplings) {
        SampledFunction ug = base.u;
        const double s = std::sqrt(c);
        for (auto& v : ug.values) {
            v *= s;
        }
        const BoundaryValues bv = boundary_values(ug);
        const EigenvalueReport rep = eigenvalue_search(ug, bv, options);
        const ScatteringData sd = scattering_matrix(ug, bv, winding);
        SweepRow row{c, rep.count(), sd.winding, sd.winding_failure};
        if (!result.rows.empty()) {
            const SweepRow& prev = result.rows.back();
            if (row.eigenvalue_count != prev.eigenvalue_count) {
                result.thresholds.emplace_back(prev.coupling, c);
            }
            if (row.eigenvalue_count < prev.eigenvalue_count) {
                result.monotone = false;
            }
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

} // namespace friedrichs
