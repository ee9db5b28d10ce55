#pragma once

#include "friedrichs/boundary_symbol.hpp"
#include "friedrichs/potential.hpp"
#include "friedrichs/spectrum.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace friedrichs {

struct LevinsonOptions {
    SpectrumOptions spectrum;
    WindingOptions winding;
    BoundarySymbolOptions symbol;
};

struct LevinsonVerdict {
    PotentialSpec potential;
    double half_width = 0.0;
    std::size_t point_count = 0;
    std::size_t eigenvalue_count = 0;
    int omega = 0;
    int square_omega = 0;
    bool pass = false;

    double endpoint_deviation_left = 0.0;
    double endpoint_deviation_right = 0.0;
    std::vector<double> exceptional_points;
    std::vector<double> eigenvalues;
    std::vector<std::string> warnings;
    std::string reason;
};

// potential -> cauchy -> scattering -> spectrum -> boundary symbol. A
// non-integer winding propagates as NumericalError; omega != -N only clears
// the pass flag.
LevinsonVerdict verify_levinson(const PotentialSpec& spec, const UniformGrid& grid,
                                const LevinsonOptions& options = {});

nlohmann::ordered_json to_json(const PotentialSpec& spec);
nlohmann::ordered_json to_json(const LevinsonVerdict& verdict);

} // namespace friedrichs
