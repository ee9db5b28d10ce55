#include "config.hpp"

#include <friedrichs/errors.hpp>

#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>

namespace friedrichs::cli {

namespace {

constexpr const char* kModule = "cli";

const Json& at_path(const Json& doc, const std::string& path)
{
    const Json* node = &doc;
    std::size_t start = 0;
    while (start <= path.size()) {
        const std::size_t dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!node->is_object() || !node->contains(key)) {
            throw ConfigError(kModule, "missing config field", path);
        }
        node = &(*node)[key];
        if (dot == std::string::npos) {
            break;
        }
        start = dot + 1;
    }
    return *node;
}

double number(const Json& doc, const std::string& path)
{
    const Json& v = at_path(doc, path);
    if (!v.is_number()) {
        throw ConfigError(kModule, "config field must be a number", path + " = " + v.dump());
    }
    return v.get<double>();
}

double positive(const Json& doc, const std::string& path)
{
    const double v = number(doc, path);
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(kModule, "config field must be positive", path + " = " + format_value(v));
    }
    return v;
}

std::size_t power_of_two(const Json& doc, const std::string& path)
{
    const Json& v = at_path(doc, path);
    if (!v.is_number_integer() || v.get<long long>() < 4 || !std::has_single_bit(v.get<unsigned long long>())) {
        throw ConfigError(kModule, "grid size N must be a power of two (>= 4)", path + " = " + v.dump());
    }
    return v.get<std::size_t>();
}

std::size_t count(const Json& doc, const std::string& path, std::size_t minimum)
{
    const Json& v = at_path(doc, path);
    if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(minimum)) {
        throw ConfigError(kModule, "config field must be an integer >= " + std::to_string(minimum),
                          path + " = " + v.dump());
    }
    return v.get<std::size_t>();
}

bool flag(const Json& doc, const std::string& path)
{
    const Json& v = at_path(doc, path);
    if (!v.is_boolean()) {
        throw ConfigError(kModule, "config field must be true or false", path + " = " + v.dump());
    }
    return v.get<bool>();
}

std::string text(const Json& doc, const std::string& path)
{
    const Json& v = at_path(doc, path);
    if (!v.is_string()) {
        throw ConfigError(kModule, "config field must be a string", path + " = " + v.dump());
    }
    return v.get<std::string>();
}

std::vector<double> numbers(const Json& doc, const std::string& path)
{
    const Json& v = at_path(doc, path);
    if (!v.is_array()) {
        throw ConfigError(kModule, "config field must be an array of numbers", path + " = " + v.dump());
    }
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) {
            throw ConfigError(kModule, "config field must be an array of numbers", path + " = " + v.dump());
        }
        out.push_back(e.get<double>());
    }
    return out;
}

} // namespace

Json default_document()
{
    return Json::parse(R"({
  "grid": {"L": 20.0, "N": 2048},
  "potential": {
    "kind": "gaussian",
    "amplitude": 1.0,
    "center": 0.0,
    "width": 1.0,
    "support": [-1.0, 1.0],
    "power": 2.0,
    "table": ""
  },
  "tolerances": {
    "zero": 1e-10,
    "root": 1e-10,
    "exceptional": 1e-6,
    "holder_radius": 0.25,
    "holder_threshold": 0.5,
    "endpoint": 0.2,
    "integer": 0.15,
    "phase_step": 2.827433388230814,
    "modulus": 1e-6,
    "mellin_mass": 1e-6
  },
  "output_dir": "friedrichs-out",
  "cauchy": {"eps_schedule": [1e-2, 5e-3, 2.5e-3], "probe_points": [0.0, 1.0]},
  "waveop": {
    "N": 512,
    "eta_schedule": [0.4, 0.2, 0.1],
    "packet": {"center": 3.0, "width": 1.0, "carrier": 0.0},
    "oversampling": 4,
    "log_floor": 1e-20,
    "theorem_residual": true,
    "dump_matrix": false
  },
  "sweep": {"couplings": [0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0, 4.0]},
  "boundary_symbol": {"y_cutoff": 40.0, "y_points": 401}
})");
}

void merge_document(Json& base, const Json& overlay, const std::string& prefix)
{
    if (!overlay.is_object()) {
        throw ConfigError(kModule, "config document must be a JSON object", prefix.empty() ? "<root>" : prefix);
    }
    for (auto it = overlay.begin(); it != overlay.end(); ++it) {
        const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (!base.contains(it.key())) {
            throw ConfigError(kModule, "unknown config field", path);
        }
        Json& target = base[it.key()];
        if (target.is_object() && it.value().is_object()) {
            merge_document(target, it.value(), path);
        } else {
            target = it.value();
        }
    }
}

void apply_override(Json& doc, const std::string& dotted_path, const std::string& raw_value)
{
    Json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = dotted_path.find('.', start);
        const std::string key =
            dotted_path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!node->is_object() || !node->contains(key)) {
            throw ConfigError(kModule, "unknown config field in override", dotted_path);
        }
        node = &(*node)[key];
        if (dot == std::string::npos) {
            break;
        }
        start = dot + 1;
    }
    Json value = Json::parse(raw_value, nullptr, false);
    if (value.is_discarded()) {
        value = raw_value;
    }
    if (node->is_string() && !value.is_string()) {
        value = raw_value;
    }
    *node = std::move(value);
}

RunConfig parse_config(const Json& doc)
{
    RunConfig c;
    c.effective = doc;
    c.half_width = positive(doc, "grid.L");
    c.point_count = power_of_two(doc, "grid.N");

    PotentialSpec& p = c.potential;
    p.kind = parse_potential_kind(text(doc, "potential.kind"));
    p.amplitude = number(doc, "potential.amplitude");
    p.center = number(doc, "potential.center");
    p.width = number(doc, "potential.width");
    const auto support = numbers(doc, "potential.support");
    if (support.size() != 2) {
        throw ConfigError(kModule, "potential.support must have two entries", at_path(doc, "potential.support").dump());
    }
    p.support_a = support[0];
    p.support_b = support[1];
    p.power = number(doc, "potential.power");
    p.table_path = text(doc, "potential.table");

    c.spectrum.zero_tolerance = positive(doc, "tolerances.zero");
    c.spectrum.root_tolerance = positive(doc, "tolerances.root");
    c.spectrum.exceptional_tolerance = positive(doc, "tolerances.exceptional");
    c.spectrum.holder_radius = positive(doc, "tolerances.holder_radius");
    c.spectrum.holder_threshold = positive(doc, "tolerances.holder_threshold");
    c.winding.endpoint_tolerance = positive(doc, "tolerances.endpoint");
    c.winding.integer_tolerance = positive(doc, "tolerances.integer");
    c.winding.max_step = positive(doc, "tolerances.phase_step");
    if (c.winding.max_step >= std::numbers::pi) {
        throw ConfigError(kModule, "tolerances.phase_step must be below pi", format_value(c.winding.max_step));
    }
    c.winding.modulus_tolerance = positive(doc, "tolerances.modulus");
    c.symbol.winding = c.winding;
    c.waveop.mellin.mass_tolerance = positive(doc, "tolerances.mellin_mass");

    c.output_dir = text(doc, "output_dir");
    c.eps_schedule = numbers(doc, "cauchy.eps_schedule");
    for (double e : c.eps_schedule) {
        if (!(e > 0.0)) {
            throw ConfigError(kModule, "cauchy.eps_schedule entries must be positive", format_value(e));
        }
    }
    c.probe_points = numbers(doc, "cauchy.probe_points");

    c.waveop.point_count = power_of_two(doc, "waveop.N");
    c.waveop.eta_schedule = numbers(doc, "waveop.eta_schedule");
    c.waveop.packet_center = number(doc, "waveop.packet.center");
    c.waveop.packet_width = positive(doc, "waveop.packet.width");
    c.waveop.packet_carrier = number(doc, "waveop.packet.carrier");
    c.waveop.mellin.oversampling = count(doc, "waveop.oversampling", 4);
    c.waveop.mellin.log_floor = positive(doc, "waveop.log_floor");
    c.waveop.theorem_residual = flag(doc, "waveop.theorem_residual");
    c.waveop.dump_matrix = flag(doc, "waveop.dump_matrix");

    c.couplings = numbers(doc, "sweep.couplings");
    c.symbol.y_cutoff = positive(doc, "boundary_symbol.y_cutoff");
    c.symbol.y_points = count(doc, "boundary_symbol.y_points", 2);
    return c;
}

RunConfig load_config(const std::string& config_path,
                      const std::vector<std::pair<std::string, std::string>>& overrides)
{
    Json doc = default_document();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            throw ConfigError(kModule, "cannot open config file", config_path);
        }
        const Json file = Json::parse(in, nullptr, false);
        if (file.is_discarded()) {
            throw ConfigError(kModule, "config file is not valid JSON", config_path);
        }
        merge_document(doc, file);
    }
    if (const char* env = std::getenv("FRIEDRICHS_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        doc["output_dir"] = std::string(env);
    }
    for (const auto& [path, value] : overrides) {
        apply_override(doc, path, value);
    }
    return parse_config(doc);
}

} // namespace friedrichs::cli
