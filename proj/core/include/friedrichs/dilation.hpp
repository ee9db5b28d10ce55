#pragma once

#include "friedrichs/grid.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace friedrichs {

using Matrix2c = Eigen::Matrix2cd;

// A bounded 2x2 function of the dilation generator, continuous on [-inf, inf].
class DilationMultiplier {
public:
    using Rule = std::function<Matrix2c(double)>;

    // Throws ConfigError unless rule(+-40) matches the declared limits to 1e-8.
    DilationMultiplier(std::string name, Rule rule, Matrix2c limit_minus, Matrix2c limit_plus);

    const std::string& name() const noexcept { return name_; }
    const Matrix2c& limit_minus() const noexcept { return limit_minus_; }
    const Matrix2c& limit_plus() const noexcept { return limit_plus_; }

    // Infinite arguments return the declared limits.
    Matrix2c operator()(double xi) const;

private:
    std::string name_;
    Rule rule_;
    Matrix2c limit_minus_;
    Matrix2c limit_plus_;
};

// phi(xi) = tanh(pi xi) + i / cosh(pi xi); phi(+-inf) = +-1.
cplx phi(double xi);

DilationMultiplier constant_multiplier(const Matrix2c& value);
DilationMultiplier phi_multiplier();
// Phi(xi) = 1/2 [[1, -conj(phi)], [-phi, 1]], the symbol of U chi_(-inf,0)(D) U*.
DilationMultiplier projection_symbol();

struct MellinOptions {
    std::size_t oversampling = 4;
    // Smallest represented x, in units of the grid spacing.
    double log_floor = 1e-20;
    double mass_tolerance = 1e-6;
};

// Precomputed Mellin-side plan for one grid and one multiplier. The constant
// part (limit_minus + limit_plus) / 2 is applied pointwise; only the remainder
// goes through the log grid.
class DilationCalculus {
public:
    DilationCalculus(const UniformGrid& grid, const DilationMultiplier& mult, MellinOptions options = {});

    HalfLinePair apply(const HalfLinePair& p) const;

    const UniformGrid& grid() const noexcept { return grid_; }
    std::size_t log_size() const noexcept { return log_size_; }
    double log_spacing() const noexcept { return log_spacing_; }

private:
    UniformGrid grid_;
    MellinOptions options_;
    Matrix2c constant_;
    std::size_t log_size_ = 0;
    double log_min_ = 0.0;
    double log_spacing_ = 0.0;
    std::vector<Matrix2c> symbol_;        // remainder at each FFT bin
    std::vector<std::ptrdiff_t> forward_first_;
    std::vector<std::array<double, 4>> forward_weights_;
    std::vector<double> forward_scale_;   // e^{s/2}
    std::vector<std::ptrdiff_t> back_first_;
    std::vector<std::array<double, 4>> back_weights_;
};

// eta(A_+) p = V* F* eta(X) F V p, one-shot convenience around DilationCalculus.
HalfLinePair apply_dilation_function(const HalfLinePair& p, const DilationMultiplier& mult,
                                     const MellinOptions& options = {});

} // namespace friedrichs
