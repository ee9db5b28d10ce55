#include "commands.hpp"

#include "config.hpp"

#include <friedrichs/boundary_symbol.hpp>
#include <friedrichs/cauchy.hpp>
#include <friedrichs/errors.hpp>
#include <friedrichs/levinson.hpp>
#include <friedrichs/operator_io.hpp>
#include <friedrichs/scattering.hpp>
#include <friedrichs/spectrum.hpp>
#include <friedrichs/waveop.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

namespace friedrichs::cli {

namespace {

constexpr const char* kModule = "cli";

std::string num(double v)
{
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) : out_(path)
    {
        if (!out_) {
            throw ConfigError(kModule, "cannot write output file", path.string());
        }
        row_strings(header);
    }

    void row(const std::vector<double>& values)
    {
        std::vector<std::string> s;
        s.reserve(values.size());
        for (double v : values) {
            s.push_back(num(v));
        }
        row_strings(s);
    }

private:
    void row_strings(const std::vector<std::string>& fields)
    {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            out_ << (i ? "," : "") << fields[i];
        }
        out_ << '\n';
    }

    std::ofstream out_;
};

void write_json(const std::filesystem::path& path, const Json& doc)
{
    std::ofstream out(path);
    if (!out) {
        throw ConfigError(kModule, "cannot write output file", path.string());
    }
    out << doc.dump(2) << '\n';
}

Json complex_json(cplx z)
{
    return Json::array({z.real(), z.imag()});
}

struct Pipeline {
    UniformGrid grid;
    SampledPotential potential;
    BoundaryValues bv;
    ScatteringData scattering;
};

Pipeline make_pipeline(const RunConfig& cfg, std::size_t point_count)
{
    UniformGrid grid(cfg.half_width, point_count);
    SampledPotential pot = sample_potential(cfg.potential, grid);
    BoundaryValues bv = boundary_values(pot.u);
    ScatteringData sd = scattering_matrix(pot.u, bv, cfg.winding);
    return {grid, std::move(pot), std::move(bv), std::move(sd)};
}

Json epsilon_checks(const RunConfig& cfg, const Pipeline& p)
{
    Json checks = Json::array();
    if (cfg.potential.kind == PotentialKind::table || cfg.eps_schedule.empty()) {
        return checks;
    }
    // Oracle grid fine enough that the midpoint rule resolves the smallest eps.
    const double eps_min = *std::min_element(cfg.eps_schedule.begin(), cfg.eps_schedule.end());
    const auto wanted = static_cast<std::size_t>(std::ceil(8.0 * cfg.half_width / eps_min));
    const UniformGrid fine(cfg.half_width, std::bit_ceil(std::max<std::size_t>(wanted, 4)));
    const SampledFunction uf = SampledFunction::from(fine, [&](double x) { return cplx(evaluate_potential(cfg.potential, x)); });
    for (double x : cfg.probe_points) {
        Json c;
        c["x"] = x;
        try {
            const EpsilonOracle oracle = epsilon_limit_oracle(uf, x, cfg.eps_schedule);
            const double pv = principal_value_integral(p.grid, p.potential.modulus_squared, x);
            const double u = evaluate_potential(cfg.potential, x);
            const cplx ip(pv, -std::numbers::pi * u * u);
            c["I_plus"] = complex_json(ip);
            c["oracle"] = complex_json(oracle.value);
            c["difference"] = std::abs(ip - oracle.value);
        } catch (const Error& e) {
            c["error"] = e.what();
        }
        checks.push_back(std::move(c));
    }
    return checks;
}

int cmd_scattering(const RunConfig& cfg, std::ostream& out)
{
    const Pipeline p = make_pipeline(cfg, cfg.point_count);
    const ScatteringData& sd = p.scattering;
    const std::size_t n = p.grid.size();
    {
        CsvWriter csv(cfg.output_dir / "scattering.csv", {"x", "re_S", "im_S", "phase"});
        for (std::size_t k = 0; k < n; ++k) {
            const double phase = sd.unwrapped_phase.empty() ? std::arg(sd.S[k]) : sd.unwrapped_phase[k];
            csv.row({p.grid.point(k), sd.S[k].real(), sd.S[k].imag(), phase});
        }
    }
    double unitarity = 0.0, identity = 0.0, plemelj = 0.0, peak = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        unitarity = std::max(unitarity, std::abs(std::abs(sd.S[k]) - 1.0));
        identity = std::max(identity, std::abs(sd.S[k] - (1.0 - p.bv.minus[k]) / (1.0 - p.bv.plus[k])));
        plemelj = std::max(plemelj, std::abs(p.bv.plus[k].imag() + std::numbers::pi * p.potential.modulus_squared[k]));
        peak = std::max(peak, p.potential.modulus_squared[k]);
    }
    Json doc;
    doc["potential"] = to_json(cfg.potential);
    doc["grid"] = {{"L", cfg.half_width}, {"N", cfg.point_count}};
    doc["winding"] = sd.winding ? Json(*sd.winding) : Json(nullptr);
    if (!sd.winding) {
        doc["winding_failure"] = sd.winding_failure;
    }
    doc["s_at_zero"] = complex_json(sd.s_at_zero);
    doc["exceptional_points"] = sd.exceptional_points;
    doc["exceptional_fill"] = sd.exceptional_fill;
    doc["refined_cells"] = sd.refined_cells;
    doc["max_unitarity_defect"] = unitarity;
    doc["max_ratio_identity_defect"] = identity;
    doc["plemelj_defect"] = plemelj / (1.0 + peak);
    doc["endpoint_deviation"] = {{"left", std::abs(sd.S.front() - 1.0)}, {"right", std::abs(sd.S.back() - 1.0)}};
    doc["epsilon_checks"] = epsilon_checks(cfg, p);
    doc["warnings"] = p.potential.warnings;
    write_json(cfg.output_dir / "scattering.json", doc);
    if (!sd.winding) {
        throw NumericalError("scattering", "winding number rejected", sd.winding_failure);
    }
    out << "winding " << *sd.winding << "\n";
    return 0;
}

int cmd_eigenvalues(const RunConfig& cfg, std::ostream& out)
{
    const Pipeline p = make_pipeline(cfg, cfg.point_count);
    const EigenvalueReport rep = eigenvalue_search(p.potential.u, p.bv, cfg.spectrum);
    Json doc;
    doc["potential"] = to_json(cfg.potential);
    doc["grid"] = {{"L", cfg.half_width}, {"N", cfg.point_count}};
    doc["count"] = rep.count();
    Json evs = Json::array();
    for (const auto& ev : rep.eigenvalues) {
        Json e;
        e["lambda"] = ev.lambda;
        e["residual_u"] = ev.residual_u;
        e["residual_root"] = ev.residual_root;
        e["local_holder"] = ev.local_holder ? Json(*ev.local_holder) : Json(nullptr);
        e["at_zero_set_edge"] = ev.at_zero_set_edge;
        e["warning"] = ev.warning;
        evs.push_back(std::move(e));
    }
    doc["eigenvalues"] = std::move(evs);
    doc["exceptional"] = rep.exceptional;
    doc["non_eigenvalue_zeros"] = rep.non_eigenvalue_zeros;
    Json zs = Json::array();
    for (const auto& [a, b] : rep.zero_set) {
        zs.push_back({a, b});
    }
    doc["zero_set"] = std::move(zs);
    doc["warnings"] = p.potential.warnings;
    write_json(cfg.output_dir / "eigenvalues.json", doc);
    out << "eigenvalues " << rep.count() << "\n";
    return 0;
}

int cmd_levinson(const RunConfig& cfg, std::ostream& out)
{
    LevinsonOptions opt{cfg.spectrum, cfg.winding, cfg.symbol};
    const LevinsonVerdict v = verify_levinson(cfg.potential, UniformGrid(cfg.half_width, cfg.point_count), opt);
    write_json(cfg.output_dir / "levinson.json", to_json(v));
    out << "N " << v.eigenvalue_count << " omega " << v.omega << " square_omega " << v.square_omega << " pass "
        << (v.pass ? "true" : "false") << "\n";
    return v.pass ? 0 : 1;
}

int cmd_waveop(const RunConfig& cfg, std::ostream& out)
{
    const Pipeline p = make_pipeline(cfg, cfg.waveop.point_count);
    const UniformGrid& g = p.grid;
    const auto n = static_cast<Eigen::Index>(g.size());
    const StationaryWaveOperator st = build_stationary_wave_operator(p.potential.u, p.bv, p.scattering);
    const OperatorMatrix plus = build_wave_operator_plus(st.omega_minus, p.scattering);

    const auto& wc = cfg.waveop;
    SampledFunction f = SampledFunction::from(g, [&](double x) {
        const double z = (x - wc.packet_center) / wc.packet_width;
        return std::exp(-0.5 * z * z) * std::polar(1.0, wc.packet_carrier * x);
    });
    const double fn = f.norm();
    for (auto& v : f.values) {
        v /= fn;
    }
    const Eigen::Map<const Eigen::VectorXcd> fv(f.values.data(), n);
    const double sq = std::sqrt(g.spacing());
    const Eigen::VectorXcd om = st.omega_minus.matrix * fv;
    Eigen::VectorXcd h0f(n), sf(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        h0f(k) = g.point(static_cast<std::size_t>(k)) * fv(k);
        sf(k) = p.scattering.S[static_cast<std::size_t>(k)] * fv(k);
    }
    const Eigen::MatrixXcd H = grid_hamiltonian(p.potential.u);

    Json doc;
    doc["potential"] = to_json(cfg.potential);
    doc["grid"] = {{"L", cfg.half_width}, {"N", wc.point_count}};
    doc["packet"] = {{"center", wc.packet_center}, {"width", wc.packet_width}, {"carrier", wc.packet_carrier}};
    doc["decomposition_error"] = st.decomposition_error;
    doc["isometry_ratio"] = sq * om.norm();
    doc["intertwining_residual"] = sq * (H * om - st.omega_minus.matrix * h0f).norm();
    doc["omega_plus_star_omega_minus_residual"] = sq * (plus.matrix.adjoint() * om - sf).norm();

    const TimeDependentResult td = time_dependent_oracle(p.potential.u, f, wc.eta_schedule);
    const Eigen::Map<const Eigen::VectorXcd> tv(td.approximant.values.data(), n);
    doc["time_dependent"] = {{"eta", td.eta},
                             {"cauchy_differences", td.cauchy_differences},
                             {"relative_error", sq * (om - tv).norm()}};

    if (wc.theorem_residual) {
        const TheoremResidual tr = theorem_residual(st.omega_minus, p.scattering, wc.mellin);
        const auto direct = largest_singular_values(to_even_odd(st.remainder), 1);
        const CommutatorKernel k0 = commutator_kernel(p.potential.u, psi_weight(p.potential.u, p.bv));
        doc["theorem_residual"] = {{"singular_values", tr.singular_values},
                                   {"hs_norm", tr.hs_norm},
                                   {"tail_ratio", tr.tail_ratio},
                                   {"direct_sigma1", direct.empty() ? 0.0 : direct.front()},
                                   {"kernel_hs_norm", k0.hs_norm}};
    }
    if (wc.dump_matrix) {
        write_operator_matrix(cfg.output_dir / "omega_minus.bin", st.omega_minus);
        doc["matrix_dump"] = "omega_minus.bin";
    }
    write_json(cfg.output_dir / "waveop.json", doc);
    out << "waveop relative_error " << num(doc["time_dependent"]["relative_error"].get<double>()) << "\n";
    return 0;
}

int cmd_boundary_symbol(const RunConfig& cfg, std::ostream& out)
{
    const Pipeline p = make_pipeline(cfg, cfg.point_count);
    const BoundarySymbolReport rep = boundary_symbol(p.scattering, cfg.symbol);
    for (const auto& e : rep.edges) {
        CsvWriter csv(cfg.output_dir / ("boundary_" + e.name + ".csv"), {e.parameter_name, "re_det", "im_det"});
        for (std::size_t i = 0; i < e.parameter.size(); ++i) {
            csv.row({e.parameter[i], e.determinant[i].real(), e.determinant[i].imag()});
        }
    }
    Json doc;
    doc["potential"] = to_json(cfg.potential);
    doc["grid"] = {{"L", cfg.half_width}, {"N", cfg.point_count}};
    doc["square_winding"] = rep.square_winding;
    doc["line_winding"] = p.scattering.winding ? Json(*p.scattering.winding) : Json(nullptr);
    doc["orientation"] = rep.orientation;
    doc["corner_mismatch"] = rep.corner_mismatch;
    doc["unitarity_defect"] = rep.unitarity_defect;
    doc["det_gamma1_defect"] = rep.det_gamma1_defect;
    doc["det_gamma3_defect"] = rep.det_gamma3_defect;
    doc["s_e_at_zero"] = complex_json(p.scattering.s_at_zero);
    write_json(cfg.output_dir / "boundary_symbol.json", doc);
    out << "square_winding " << rep.square_winding << "\n";
    return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out)
{
    const SweepResult res = coupling_sweep(cfg.potential, UniformGrid(cfg.half_width, cfg.point_count), cfg.couplings,
                                           cfg.spectrum, cfg.winding);
    bool levinson_rows = true;
    {
        CsvWriter csv(cfg.output_dir / "sweep.csv", {"g", "N", "omega", "threshold"});
        for (std::size_t i = 0; i < res.rows.size(); ++i) {
            const SweepRow& r = res.rows[i];
            const bool jump = i > 0 && r.eigenvalue_count != res.rows[i - 1].eigenvalue_count;
            csv.row({r.coupling, static_cast<double>(r.eigenvalue_count),
                     r.omega ? static_cast<double>(*r.omega) : std::nan(""), jump ? 1.0 : 0.0});
            levinson_rows = levinson_rows && r.omega && *r.omega == -static_cast<int>(r.eigenvalue_count);
        }
    }
    Json doc;
    doc["potential"] = to_json(cfg.potential);
    Json th = Json::array();
    for (const auto& [a, b] : res.thresholds) {
        th.push_back({a, b});
    }
    doc["thresholds"] = std::move(th);
    doc["monotone"] = res.monotone;
    doc["omega_equals_minus_N"] = levinson_rows;
    Json failures = Json::array();
    for (const auto& r : res.rows) {
        if (!r.omega) {
            failures.push_back({{"g", r.coupling}, {"reason", r.omega_failure}});
        }
    }
    doc["winding_failures"] = std::move(failures);
    write_json(cfg.output_dir / "sweep.json", doc);
    out << "sweep rows " << res.rows.size() << " thresholds " << res.thresholds.size() << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rank-one Friedrichs model: scattering, eigenvalues and Levinson checks", "friedrichs"};
    std::string command;
    std::string config_path;
    app.add_option("command", command, "scattering | eigenvalues | levinson | waveop-verify | boundary-symbol | sweep")
        ->required()
        ->check(CLI::IsMember({"scattering", "eigenvalues", "levinson", "waveop-verify", "boundary-symbol", "sweep"}));
    app.add_option("--config", config_path, "JSON config file");
    app.allow_extras();
    app.footer("Any other --dotted.path value sets one config field, e.g. --grid.N 4096 or --potential.kind=bump_power.");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: [cli] " << e.what() << "\n";
        return 2;
    }

    try {
        std::vector<std::pair<std::string, std::string>> overrides;
        const std::vector<std::string> extra = app.remaining();
        for (std::size_t i = 0; i < extra.size(); ++i) {
            const std::string& tok = extra[i];
            if (tok.rfind("--", 0) != 0 || tok.size() < 3) {
                throw ConfigError(kModule, "unexpected argument", tok);
            }
            const std::string body = tok.substr(2);
            if (const auto eq = body.find('='); eq != std::string::npos) {
                overrides.emplace_back(body.substr(0, eq), body.substr(eq + 1));
            } else if (i + 1 < extra.size()) {
                overrides.emplace_back(body, extra[++i]);
            } else {
                throw ConfigError(kModule, "override flag without a value", tok);
            }
        }
        const RunConfig cfg = load_config(config_path, overrides);
        std::filesystem::create_directories(cfg.output_dir);
        write_json(cfg.output_dir / "effective_config.json", cfg.effective);

        if (command == "scattering") return cmd_scattering(cfg, out);
        if (command == "eigenvalues") return cmd_eigenvalues(cfg, out);
        if (command == "levinson") return cmd_levinson(cfg, out);
        if (command == "waveop-verify") return cmd_waveop(cfg, out);
        if (command == "boundary-symbol") return cmd_boundary_symbol(cfg, out);
        return cmd_sweep(cfg, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: [cli] " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace friedrichs::cli
