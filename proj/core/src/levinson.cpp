#include "friedrichs/levinson.hpp"

#include "friedrichs/errors.hpp"

#include <cmath>

namespace friedrichs {

LevinsonVerdict verify_levinson(const PotentialSpec& spec, const UniformGrid& grid, const LevinsonOptions& options)
{
    const SampledPotential pot = sample_potential(spec, grid);
    const BoundaryValues bv = boundary_values(pot.u);
    const ScatteringData sd = scattering_matrix(pot.u, bv, options.winding);
    if (!sd.winding) {
        throw NumericalError("levinson", "line winding of S failed", sd.winding_failure);
    }
    const EigenvalueReport rep = eigenvalue_search(pot.u, bv, options.spectrum);
    const BoundarySymbolReport sym = boundary_symbol(sd, options.symbol);

    LevinsonVerdict v;
    v.potential = spec;
    v.half_width = grid.half_width();
    v.point_count = grid.size();
    v.eigenvalue_count = rep.count();
    v.omega = *sd.winding;
    v.square_omega = sym.square_winding;
    v.endpoint_deviation_left = std::abs(sd.S.front() - 1.0);
    v.endpoint_deviation_right = std::abs(sd.S.back() - 1.0);
    v.exceptional_points = sd.exceptional_points;
    v.exceptional_points.insert(v.exceptional_points.end(), rep.exceptional.begin(), rep.exceptional.end());
    for (const auto& ev : rep.eigenvalues) {
        v.eigenvalues.push_back(ev.lambda);
        if (!ev.warning.empty()) {
            v.warnings.push_back("lambda=" + format_value(ev.lambda) + ": " + ev.warning);
        }
    }
    v.warnings.insert(v.warnings.end(), pot.warnings.begin(), pot.warnings.end());

    const int n = static_cast<int>(v.eigenvalue_count);
    v.pass = (v.omega == -n) && (v.square_omega == v.omega);
    if (v.square_omega != v.omega) {
        v.reason = "square winding " + std::to_string(v.square_omega) + " disagrees with line winding " +
                   std::to_string(v.omega);
    } else if (v.omega != -n) {
        v.reason = "omega = " + std::to_string(v.omega) + " but N = " + std::to_string(n);
    }
    return v;
}

nlohmann::ordered_json to_json(const PotentialSpec& spec)
{
    nlohmann::ordered_json j;
    j["kind"] = std::string(to_string(spec.kind));
    j["amplitude"] = spec.amplitude;
    switch (spec.kind) {
    case PotentialKind::gaussian:
    case PotentialKind::lorentzian:
        j["center"] = spec.center;
        j["width"] = spec.width;
        break;
    case PotentialKind::bump_power:
        j["support"] = {spec.support_a, spec.support_b};
        j["power"] = spec.power;
        break;
    case PotentialKind::table:
        j["table"] = spec.table_path;
        break;
    case PotentialKind::zero:
        break;
    }
    return j;
}

nlohmann::ordered_json to_json(const LevinsonVerdict& v)
{
    nlohmann::ordered_json j;
    j["potential"] = to_json(v.potential);
    j["N"] = v.eigenvalue_count;
    j["omega"] = v.omega;
    j["square_omega"] = v.square_omega;
    j["pass"] = v.pass;
    nlohmann::ordered_json d;
    d["grid"] = {{"L", v.half_width}, {"N", v.point_count}};
    d["endpoint_deviation"] = {{"left", v.endpoint_deviation_left}, {"right", v.endpoint_deviation_right}};
    d["exceptional_points"] = v.exceptional_points;
    d["eigenvalues"] = v.eigenvalues;
    d["warnings"] = v.warnings;
    d["reason"] = v.reason;
    j["diagnostics"] = std::move(d);
    return j;
}

} // namespace friedrichs
