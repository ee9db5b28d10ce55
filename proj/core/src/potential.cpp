#include "friedrichs/potential.hpp"

#include "friedrichs/errors.hpp"
#include "friedrichs/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace friedrichs {

namespace {

constexpr const char* kModule = "potential";
constexpr double kDecayRatio = 1e-3;
constexpr double kPairFloor = 1e-13;
constexpr std::size_t kMinPairs = 16;

struct Table {
    std::vector<double> x;
    ComplexVector values;
};

double parse_number(const std::string& field, const std::string& path, std::size_t line)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) {
        ++used;
    }
    if (used != field.size() || field.empty()) {
        throw ConfigError(kModule, "malformed number in table " + path + " line " + std::to_string(line), field);
    }
    return v;
}

Table read_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(kModule, "cannot open potential table", path);
    }
    Table t;
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError(kModule, "potential table is empty (header line required)", path);
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 2 && fields.size() != 3) {
            throw ConfigError(kModule, "table rows need 2 or 3 columns (" + path + " line " +
                                           std::to_string(lineno) + ")",
                              std::to_string(fields.size()));
        }
        const double x = parse_number(fields[0], path, lineno);
        const double re = parse_number(fields[1], path, lineno);
        const double im = fields.size() == 3 ? parse_number(fields[2], path, lineno) : 0.0;
        if (!t.x.empty() && !(x > t.x.back())) {
            throw ConfigError(kModule, "table x column must be strictly increasing (" + path + " line " +
                                           std::to_string(lineno) + ")",
                              format_value(x));
        }
        t.x.push_back(x);
        t.values.emplace_back(re, im);
    }
    if (t.x.size() < 4) {
        throw ConfigError(kModule, "potential table needs at least 4 rows", path);
    }
    return t;
}

void validate(const PotentialSpec& spec)
{
    if (spec.kind == PotentialKind::zero) {
        return;
    }
    if (!(spec.amplitude > 0.0) || !std::isfinite(spec.amplitude)) {
        throw ConfigError(kModule, "amplitude must be positive", format_value(spec.amplitude));
    }
    switch (spec.kind) {
    case PotentialKind::gaussian:
    case PotentialKind::lorentzian:
        if (!(spec.width > 0.0)) {
            throw ConfigError(kModule, "width must be positive", format_value(spec.width));
        }
        break;
    case PotentialKind::bump_power:
        if (!(spec.support_b > spec.support_a)) {
            throw ConfigError(kModule, "bump support needs a < b", format_value(spec.support_b - spec.support_a));
        }
        if (!(spec.power > 0.0)) {
            throw ConfigError(kModule, "bump edge power must be positive", format_value(spec.power));
        }
        break;
    case PotentialKind::table:
        if (spec.table_path.empty()) {
            throw ConfigError(kModule, "table potential needs a file path", "");
        }
        break;
    case PotentialKind::zero:
        break;
    }
}

} // namespace

std::string_view to_string(PotentialKind kind)
{
    switch (kind) {
    case PotentialKind::zero: return "zero";
    case PotentialKind::gaussian: return "gaussian";
    case PotentialKind::lorentzian: return "lorentzian";
    case PotentialKind::bump_power: return "bump_power";
    case PotentialKind::table: return "table";
    }
    return "unknown";
}

PotentialKind parse_potential_kind(std::string_view name)
{
    for (auto k : {PotentialKind::zero, PotentialKind::gaussian, PotentialKind::lorentzian,
                   PotentialKind::bump_power, PotentialKind::table}) {
        if (name == to_string(k)) {
            return k;
        }
    }
    throw ConfigError(kModule, "unknown potential kind", name);
}

double evaluate_potential(const PotentialSpec& spec, double x)
{
    const double c = spec.amplitude;
    switch (spec.kind) {
    case PotentialKind::zero:
        return 0.0;
    case PotentialKind::gaussian: {
        const double z = (x - spec.center) / spec.width;
        return c * std::exp(-0.5 * z * z);
    }
    case PotentialKind::lorentzian: {
        const double z = (x - spec.center) / spec.width;
        return c / (1.0 + z * z);
    }
    case PotentialKind::bump_power: {
        if (x <= spec.support_a || x >= spec.support_b) {
            return 0.0;
        }
        const double z = (2.0 * x - spec.support_a - spec.support_b) / (spec.support_b - spec.support_a);
        return c * std::pow(1.0 - z * z, spec.power);
    }
    case PotentialKind::table:
        break;
    }
    throw ConfigError(kModule, "no closed form for table potentials", spec.table_path);
}

SampledPotential sample_potential(const PotentialSpec& spec, const UniformGrid& grid)
{
    validate(spec);
    SampledPotential out{SampledFunction(grid), std::vector<double>(grid.size()), {}};
    if (spec.kind == PotentialKind::table) {
        const Table t = read_table(spec.table_path);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            out.u.values[k] = spec.amplitude * eno_cubic(t.x, t.values, grid.point(k));
        }
    } else {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            out.u.values[k] = evaluate_potential(spec, grid.point(k));
        }
    }
    if (spec.kind == PotentialKind::bump_power && spec.power < 1.0) {
        out.warnings.push_back("bump edge power " + format_value(spec.power) +
                               " < 1: Hoelder exponent at the support edge is below 1");
    }

    const double peak = out.u.max_abs();
    if (spec.kind != PotentialKind::table) {
        const double edge = std::max(std::abs(evaluate_potential(spec, -grid.half_width())),
                                     std::abs(evaluate_potential(spec, grid.half_width())));
        if (edge > kDecayRatio * peak) {
            throw ConfigError(kModule, "potential does not decay at the grid ends (|u(+-L)| > 1e-3 max|u|)",
                              format_value(peak > 0 ? edge / peak : edge));
        }
    } else {
        const double edge = std::max(std::abs(out.u.values.front()), std::abs(out.u.values.back()));
        if (edge > kDecayRatio * peak) {
            throw ConfigError(kModule, "table potential does not decay at the grid ends",
                              format_value(peak > 0 ? edge / peak : edge));
        }
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out.modulus_squared[k] = std::norm(out.u.values[k]);
    }
    return out;
}

HolderEstimate holder_exponent_estimate(const SampledFunction& u, double x0, double radius)
{
    const UniformGrid& g = u.grid;
    if (!(radius > 0.0) || x0 - radius < -g.half_width() || x0 + radius > g.half_width()) {
        throw ConfigError(kModule, "Hoelder window must lie inside the grid", format_value(radius));
    }
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (std::abs(g.point(k) - x0) <= radius) {
            idx.push_back(k);
        }
    }
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            if (std::abs(u.values[idx[a]] - u.values[idx[b]]) > kPairFloor) {
                ++pairs;
            }
        }
    }
    if (pairs < kMinPairs) {
        throw NumericalError(kModule, "Hoelder window has fewer than 16 pairs above 1e-13", std::to_string(pairs));
    }

    // Roughly log-spaced separations so that every scale carries equal weight.
    // Beyond half the radius the modulus saturates on the window size; below
    // four cells it sees where the samples sit around a singular point.
    const double largest = 0.5 * radius / g.spacing();
    const double smallest = largest >= 16.0 ? 4.0 : 1.0;
    std::set<std::size_t> seps;
    for (double m = smallest; m <= largest; m *= 1.25) {
        seps.insert(static_cast<std::size_t>(std::round(m)));
    }
    std::vector<double> lx, ly;
    for (std::size_t m : seps) {
        if (m >= idx.size()) {
            continue;
        }
        double w = 0.0;
        for (std::size_t a = 0; a + m < idx.size(); ++a) {
            w = std::max(w, std::abs(u.values[idx[a + m]] - u.values[idx[a]]));
        }
        if (w > kPairFloor) {
            lx.push_back(std::log(static_cast<double>(m) * g.spacing()));
            ly.push_back(std::log(w));
        }
    }
    if (lx.size() < 2) {
        throw NumericalError(kModule, "Hoelder window resolves fewer than two separations", std::to_string(lx.size()));
    }
    const auto n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    HolderEstimate est;
    est.exponent = sxy / sxx;
    est.pairs = pairs;
    double ss = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (my + est.exponent * (lx[i] - mx));
        ss += r * r;
    }
    est.residual = std::sqrt(ss / n);
    return est;
}

} // namespace friedrichs
