#pragma once

#include "friedrichs/cauchy.hpp"
#include "friedrichs/potential.hpp"
#include "friedrichs/scattering.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace friedrichs {

struct SpectrumOptions {
    double zero_tolerance = 1e-10;       // relative to max|u|
    double root_tolerance = 1e-10;       // bracket width for bisection
    double exceptional_tolerance = 1e-6; // |1 - I_+| at an exceptional point
    double holder_radius = 0.25;
    double holder_threshold = 0.5;
};

struct Eigenvalue {
    double lambda = 0.0;
    double residual_u = 0.0;
    double residual_root = 0.0;
    std::optional<double> local_holder;  // empty where u is flat near lambda
    bool at_zero_set_edge = false;
    std::string warning;
};

struct EigenvalueReport {
    std::vector<Eigenvalue> eigenvalues;
    std::vector<double> exceptional;
    std::vector<double> non_eigenvalue_zeros;
    std::vector<std::pair<double, double>> zero_set;

    std::size_t count() const noexcept { return eigenvalues.size(); }
};

// Roots of 1 - PV int |u|^2 / (lambda - y) dy on the zero set of u.
EigenvalueReport eigenvalue_search(const SampledFunction& u, const BoundaryValues& bv,
                                   const SpectrumOptions& options = {});

// Points where 1 - I_+ nearly vanishes although |u| is above the zero tolerance.
std::vector<double> exceptional_points(const SampledFunction& u, const BoundaryValues& bv,
                                       const SpectrumOptions& options = {});

struct SweepRow {
    double coupling = 0.0;
    std::size_t eigenvalue_count = 0;
    std::optional<int> omega;
    std::string omega_failure;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::pair<double, double>> thresholds;  // consecutive couplings where N jumps
    bool monotone = true;
};

// Runs the pipeline for u_g = sqrt(g) u at every coupling g.
SweepResult coupling_sweep(const PotentialSpec& spec, const UniformGrid& grid, std::span<const double> couplings,
                           const SpectrumOptions& options = {}, const WindingOptions& winding = {});

} // namespace friedrichs
