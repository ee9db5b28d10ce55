#pragma once

#include <friedrichs/boundary_symbol.hpp>
#include <friedrichs/dilation.hpp>
#include <friedrichs/potential.hpp>
#include <friedrichs/spectrum.hpp>

#include <json.hpp>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace friedrichs::cli {

using Json = nlohmann::ordered_json;

struct WaveopConfig {
    std::size_t point_count = 512;
    std::vector<double> eta_schedule{0.4, 0.2, 0.1};
    double packet_center = 3.0;
    double packet_width = 1.0;
    double packet_carrier = 0.0;
    bool theorem_residual = true;
    bool dump_matrix = false;
    MellinOptions mellin;
};

struct RunConfig {
    double half_width = 20.0;
    std::size_t point_count = 2048;
    PotentialSpec potential;
    SpectrumOptions spectrum;
    WindingOptions winding;
    BoundarySymbolOptions symbol;
    std::filesystem::path output_dir = "friedrichs-out";
    std::vector<double> eps_schedule{1e-2, 5e-3, 2.5e-3};
    std::vector<double> probe_points{0.0, 1.0};
    std::vector<double> couplings;
    WaveopConfig waveop;

    Json effective;  // the merged document the fields were read from
};

Json default_document();

// Merges `overlay` into `base`; every key of the overlay must already exist.
void merge_document(Json& base, const Json& overlay, const std::string& prefix = "");

// --a.b value / --a.b=value; values parse as JSON, else as plain strings.
void apply_override(Json& doc, const std::string& dotted_path, const std::string& raw_value);

// Reads and validates every field (ConfigError on violation).
RunConfig parse_config(const Json& doc);

// Defaults < config file < FRIEDRICHS_OUTPUT_DIR < flag overrides.
RunConfig load_config(const std::string& config_path,
                      const std::vector<std::pair<std::string, std::string>>& overrides);

} // namespace friedrichs::cli
