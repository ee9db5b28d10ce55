#pragma once

#include "friedrichs/grid.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace friedrichs {

enum class PotentialKind { zero, gaussian, lorentzian, bump_power, table };

std::string_view to_string(PotentialKind kind);
// Throws ConfigError on unknown names.
PotentialKind parse_potential_kind(std::string_view name);

// gaussian:   c exp(-(x - center)^2 / (2 width^2))
// lorentzian: c / (1 + ((x - center) / width)^2)
// bump_power: c (1 - ((2x - a - b) / (b - a))^2)^p on [a, b], 0 outside
// table:      CSV samples (x, Re u[, Im u]) scaled by c, zero outside the table
struct PotentialSpec {
    PotentialKind kind = PotentialKind::gaussian;
    double amplitude = 1.0;
    double center = 0.0;
    double width = 1.0;
    double support_a = -1.0;
    double support_b = 1.0;
    double power = 2.0;
    std::string table_path;
};

struct SampledPotential {
    SampledFunction u;
    std::vector<double> modulus_squared;
    std::vector<std::string> warnings;
};

// Validates the spec and checks |u(+-L)| <= 1e-3 max|u|.
SampledPotential sample_potential(const PotentialSpec& spec, const UniformGrid& grid);

// Closed form of the built-in kinds; table specs are rejected.
double evaluate_potential(const PotentialSpec& spec, double x);

struct HolderEstimate {
    double exponent = 0.0;
    double residual = 0.0;
    std::size_t pairs = 0;
};

// Slope of log w(h) against log h, where w(h) is the largest |u(x) - u(y)|
// over grid pairs at distance h inside [x0 - radius, x0 + radius], for h
// between 4 dx and radius / 2 when the window is wide enough.
HolderEstimate holder_exponent_estimate(const SampledFunction& u, double x0, double radius);

} // namespace friedrichs
