#pragma once

#include "friedrichs/cauchy.hpp"
#include "friedrichs/dilation.hpp"
#include "friedrichs/grid.hpp"
#include "friedrichs/scattering.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace friedrichs {

enum class Representation : std::uint32_t { position = 0, even_odd = 1 };

// Dense matrix acting on sample vectors. In the even/odd representation the
// first N/2 rows/columns are the even channel, the last N/2 the odd one.
struct OperatorMatrix {
    UniformGrid grid;
    Representation representation = Representation::position;
    Eigen::MatrixXcd matrix;

    Eigen::VectorXcd apply(std::span<const cplx> f) const;
};

// chi_(-inf,0)(D) on the grid, one projected basis vector per column.
Eigen::MatrixXcd projection_matrix(const UniformGrid& grid);

// U A U* for a position-space matrix A.
Eigen::MatrixXcd to_even_odd(const Eigen::MatrixXcd& position);

struct StationaryWaveOperator {
    OperatorMatrix omega_minus;
    Eigen::MatrixXcd projected_scattering;  // P diag(S - 1)
    Eigen::MatrixXcd remainder;             // K = -2 pi i [diag(u), P] diag(psi)
    double decomposition_error = 0.0;       // max |Omega_- - 1 - P(S - 1) - K|
};

// Omega_- = 1 - 2 pi i diag(u) P diag(psi). Throws NumericalError when an
// exceptional point sits inside the numerical support of u or when the
// decomposition fails to close to 1e-12.
StationaryWaveOperator build_stationary_wave_operator(const SampledFunction& u, const BoundaryValues& bv,
                                                      const ScatteringData& S);

// Omega_+ = Omega_- diag(conj S).
OperatorMatrix build_wave_operator_plus(const OperatorMatrix& omega_minus, const ScatteringData& S);

// diag(x) + dx u u*.
Eigen::MatrixXcd grid_hamiltonian(const SampledFunction& u);

struct TimeDependentResult {
    SampledFunction approximant;           // at the last (smallest) eta
    std::vector<double> eta;
    std::vector<double> cauchy_differences; // ||A(eta_i) - A(eta_{i-1})|| / ||f||
};

// Abel mean eta int_0^inf e^{-eta s} e^{-i H s} e^{i H0 s} f ds, the t -> -inf
// approximant of Omega_- f, evaluated exactly in the eigenbasis of the grid
// Hamiltonian. Throws NumericalError unless the Cauchy differences decrease.
TimeDependentResult time_dependent_oracle(const SampledFunction& u, const SampledFunction& f,
                                          std::span<const double> eta_schedule);

struct CommutatorKernel {
    OperatorMatrix kernel;
    double hs_norm = 0.0;
};

// k(x, y) = (i / 2 pi) (u(x) - u(y)) / (y - x) psi(y) dx, diagonal from a
// centred difference of u.
CommutatorKernel commutator_kernel(const SampledFunction& u, const PsiWeight& psi);

struct TheoremResidual {
    OperatorMatrix residual;
    std::vector<double> singular_values;  // largest first, at most 16
    double hs_norm = 0.0;
    double tail_ratio = 0.0;              // sigma_16 / sigma_1
};

// U Omega_- U* - 1 - Phi(A_+) [[s_e - 1, s_o], [s_o, s_e - 1]](X_+), with
// Phi(A_+) assembled column by column on the Mellin side.
TheoremResidual theorem_residual(const OperatorMatrix& omega_minus, const ScatteringData& S,
                                 const MellinOptions& options = {});

std::vector<double> largest_singular_values(const Eigen::MatrixXcd& m, std::size_t count);

} // namespace friedrichs
