#include "friedrichs/waveop.hpp"

#include "friedrichs/errors.hpp"

#include <Eigen/SVD>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace friedrichs {

namespace {

constexpr const char* kModule = "waveop";
constexpr double kDecompositionTolerance = 1e-12;
constexpr double kNormTolerance = 1e-6;

Eigen::Map<const Eigen::VectorXcd> as_vector(std::span<const cplx> v)
{
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}

} // namespace

Eigen::VectorXcd OperatorMatrix::apply(std::span<const cplx> f) const
{
    if (static_cast<Eigen::Index>(f.size()) != matrix.cols()) {
        throw ConfigError(kModule, "vector length does not match the operator", std::to_string(f.size()));
    }
    return matrix * as_vector(f);
}

Eigen::MatrixXcd projection_matrix(const UniformGrid& grid)
{
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd P(n, n);
    SampledFunction e(grid);
    for (Eigen::Index k = 0; k < n; ++k) {
        std::fill(e.values.begin(), e.values.end(), cplx{});
        e.values[static_cast<std::size_t>(k)] = 1.0;
        const SampledFunction col = negative_halfline_projection(e);
        P.col(k) = as_vector(col.values);
    }
    return P;
}

Eigen::MatrixXcd to_even_odd(const Eigen::MatrixXcd& a)
{
    const Eigen::Index n = a.rows();
    if (a.cols() != n || n % 2 != 0) {
        throw ConfigError(kModule, "even/odd conjugation needs a square matrix of even size", std::to_string(n));
    }
    const Eigen::Index h = n / 2;
    const double s = 1.0 / std::numbers::sqrt2;
    Eigen::MatrixXcd t(n, n);
    for (Eigen::Index j = 0; j < h; ++j) {
        t.row(j) = s * (a.row(h + j) + a.row(h - 1 - j));
        t.row(h + j) = s * (a.row(h + j) - a.row(h - 1 - j));
    }
    Eigen::MatrixXcd b(n, n);
    for (Eigen::Index j = 0; j < h; ++j) {
        b.col(j) = s * (t.col(h + j) + t.col(h - 1 - j));
        b.col(h + j) = s * (t.col(h + j) - t.col(h - 1 - j));
    }
    return b;
}

StationaryWaveOperator build_stationary_wave_operator(const SampledFunction& u, const BoundaryValues& bv,
                                                      const ScatteringData& S)
{
    const UniformGrid& g = u.grid;
    if (!(bv.grid == g) || !(S.grid == g)) {
        throw ConfigError(kModule, "potential, boundary values and scattering data must share one grid",
                          std::to_string(g.size()));
    }
    const PsiWeight psi = psi_weight(u, bv);
    const double peak = u.max_abs();
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (psi.mask[k] && std::abs(u.values[k]) > 1e-10 * peak) {
            throw NumericalError(kModule, "exceptional point inside the numerical support of u", format_value(g.point(k)));
        }
    }
    const auto n = static_cast<Eigen::Index>(g.size());
    const Eigen::MatrixXcd P = projection_matrix(g);
    const Eigen::VectorXcd uv = as_vector(u.values);
    const Eigen::VectorXcd pv = as_vector(psi.values);
    const cplx c(0.0, -2.0 * std::numbers::pi);

    StationaryWaveOperator out{{g, Representation::position, Eigen::MatrixXcd::Identity(n, n)}, {}, {}, 0.0};
    // diag(u) P diag(psi)
    const Eigen::MatrixXcd uPpsi = uv.asDiagonal() * P * pv.asDiagonal();
    out.omega_minus.matrix += c * uPpsi;
    Eigen::VectorXcd s_minus_1(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        s_minus_1(k) = S.S[static_cast<std::size_t>(k)] - 1.0;
    }
    out.projected_scattering = P * s_minus_1.asDiagonal();
    out.remainder = c * (uPpsi - P * (uv.cwiseProduct(pv)).asDiagonal());

    const Eigen::MatrixXcd gap = out.omega_minus.matrix - Eigen::MatrixXcd::Identity(n, n) -
                                 out.projected_scattering - out.remainder;
    out.decomposition_error = gap.cwiseAbs().maxCoeff();
    if (out.decomposition_error > kDecompositionTolerance) {
        throw NumericalError(kModule, "Omega_- - 1 != P(S - 1) + K beyond 1e-12", format_value(out.decomposition_error));
    }
    return out;
}

OperatorMatrix build_wave_operator_plus(const OperatorMatrix& omega_minus, const ScatteringData& S)
{
    if (!(omega_minus.grid == S.grid) || omega_minus.representation != Representation::position) {
        throw ConfigError(kModule, "Omega_+ needs Omega_- in position form on the scattering grid",
                          std::to_string(S.grid.size()));
    }
    Eigen::VectorXcd sc(static_cast<Eigen::Index>(S.S.size()));
    for (std::size_t k = 0; k < S.S.size(); ++k) {
        sc(static_cast<Eigen::Index>(k)) = std::conj(S.S[k]);
    }
    return {omega_minus.grid, Representation::position, omega_minus.matrix * sc.asDiagonal()};
}

Eigen::MatrixXcd grid_hamiltonian(const SampledFunction& u)
{
    const UniformGrid& g = u.grid;
    const Eigen::VectorXcd uv = as_vector(u.values);
    Eigen::MatrixXcd h = g.spacing() * (uv * uv.adjoint());
    for (std::size_t k = 0; k < g.size(); ++k) {
        h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) += g.point(k);
    }
    return h;
}

TimeDependentResult time_dependent_oracle(const SampledFunction& u, const SampledFunction& f,
                                          std::span<const double> eta_schedule)
{
    const UniformGrid& g = u.grid;
    if (!(f.grid == g)) {
        throw ConfigError(kModule, "wavepacket and potential live on different grids", std::to_string(f.grid.size()));
    }
    const double fn = f.norm();
    if (std::abs(fn - 1.0) > kNormTolerance) {
        throw ConfigError(kModule, "time-dependent oracle needs a normalized wavepacket", format_value(fn));
    }
    if (eta_schedule.empty()) {
        throw ConfigError(kModule, "eta schedule is empty", "");
    }
    for (std::size_t i = 0; i < eta_schedule.size(); ++i) {
        if (!(eta_schedule[i] > 0.0) || (i > 0 && !(eta_schedule[i] < eta_schedule[i - 1]))) {
            throw ConfigError(kModule, "eta schedule must be positive and strictly decreasing",
                              format_value(eta_schedule[i]));
        }
    }

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(grid_hamiltonian(u));
    if (eig.info() != Eigen::Success) {
        throw NumericalError(kModule, "eigendecomposition of the grid Hamiltonian failed", std::to_string(g.size()));
    }
    const Eigen::MatrixXcd& V = eig.eigenvectors();
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const auto n = static_cast<Eigen::Index>(g.size());
    const Eigen::VectorXcd fv = as_vector(f.values);

    // eta int_0^inf e^{-eta s} e^{-i lambda_m s} e^{i x_k s} ds = eta / (eta + i (lambda_m - x_k))
    TimeDependentResult out{SampledFunction(g), {}, {}};
    Eigen::VectorXcd previous;
    for (double eta : eta_schedule) {
        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n);
        for (Eigen::Index m = 0; m < n; ++m) {
            cplx acc{};
            for (Eigen::Index k = 0; k < n; ++k) {
                acc += std::conj(V(k, m)) * fv(k) * eta / cplx(eta, lambda(m) - g.point(static_cast<std::size_t>(k)));
            }
            y(m) = acc;
        }
        Eigen::VectorXcd approx = V * y;
        if (previous.size() == n) {
            out.cauchy_differences.push_back(std::sqrt(g.spacing()) * (approx - previous).norm());
        }
        previous = std::move(approx);
        out.eta.push_back(eta);
    }
    for (std::size_t i = 1; i < out.cauchy_differences.size(); ++i) {
        if (!(out.cauchy_differences[i] < out.cauchy_differences[i - 1]) && out.cauchy_differences[i] > 1e-14) {
            throw NumericalError(kModule, "Abel Cauchy differences do not decrease; enlarge L",
                                 format_value(out.cauchy_differences[i]));
        }
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        out.approximant.values[static_cast<std::size_t>(k)] = previous(k);
    }
    return out;
}

CommutatorKernel commutator_kernel(const SampledFunction& u, const PsiWeight& psi)
{
    const UniformGrid& g = u.grid;
    if (!(psi.grid == g)) {
        throw ConfigError(kModule, "psi and potential live on different grids", std::to_string(psi.grid.size()));
    }
    const double peak = u.max_abs();
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (psi.mask[k] && std::abs(u.values[k]) > 1e-10 * peak) {
            throw NumericalError(kModule, "psi masked inside the numerical support of u", format_value(g.point(k)));
        }
    }
    const auto n = static_cast<Eigen::Index>(g.size());
    const double dx = g.spacing();
    const cplx c(0.0, 1.0 / (2.0 * std::numbers::pi));
    CommutatorKernel out{{g, Representation::position, Eigen::MatrixXcd(n, n)}, 0.0};
    auto& K = out.kernel.matrix;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        const cplx weight = c * psi.values[ks] * dx;
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto js = static_cast<std::size_t>(j);
            if (j == k) {
                const cplx left = js > 0 ? u.values[js - 1] : cplx{};
                const cplx right = js + 1 < g.size() ? u.values[js + 1] : cplx{};
                const cplx du = (right - left) / (2.0 * dx);
                K(j, k) = -du * weight;
            } else {
                K(j, k) = (u.values[js] - u.values[ks]) / (g.point(ks) - g.point(js)) * weight;
            }
        }
    }
    out.hs_norm = K.norm();
    return out;
}

std::vector<double> largest_singular_values(const Eigen::MatrixXcd& m, std::size_t count)
{
    const Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const Eigen::VectorXd& sv = svd.singularValues();
    std::vector<double> out;
    for (Eigen::Index i = 0; i < sv.size() && out.size() < count; ++i) {
        out.push_back(sv(i));
    }
    return out;
}

TheoremResidual theorem_residual(const OperatorMatrix& omega_minus, const ScatteringData& S,
                                 const MellinOptions& options)
{
    const UniformGrid& g = omega_minus.grid;
    if (omega_minus.representation != Representation::position || !(S.grid == g)) {
        throw ConfigError(kModule, "theorem residual needs Omega_- in position form on the scattering grid",
                          std::to_string(g.size()));
    }
    const auto n = static_cast<Eigen::Index>(g.size());
    const Eigen::Index h = n / 2;
    const DilationCalculus calc(g, projection_symbol(), options);

    // Phi(A_+) on every basis vector of the half-line pair space.
    Eigen::MatrixXcd phi_mat(n, n);
    HalfLinePair e(g);
    for (Eigen::Index col = 0; col < n; ++col) {
        std::fill(e.first.begin(), e.first.end(), cplx{});
        std::fill(e.second.begin(), e.second.end(), cplx{});
        const auto j = static_cast<std::size_t>(col % h);
        (col < h ? e.first : e.second)[j] = 1.0;
        const HalfLinePair r = calc.apply(e);
        for (Eigen::Index i = 0; i < h; ++i) {
            phi_mat(i, col) = r.first[static_cast<std::size_t>(i)];
            phi_mat(h + i, col) = r.second[static_cast<std::size_t>(i)];
        }
    }

    // Multiplication by [[s_e - 1, s_o], [s_o, s_e - 1]] only mixes the two
    // channels at a fixed index, so the product is two column combinations.
    Eigen::MatrixXcd main = Eigen::MatrixXcd::Identity(n, n);
    for (Eigen::Index j = 0; j < h; ++j) {
        const cplx a = S.s_even[static_cast<std::size_t>(j)] - 1.0;
        const cplx b = S.s_odd[static_cast<std::size_t>(j)];
        main.col(j) += phi_mat.col(j) * a + phi_mat.col(h + j) * b;
        main.col(h + j) += phi_mat.col(j) * b + phi_mat.col(h + j) * a;
    }

    TheoremResidual out{{g, Representation::even_odd, to_even_odd(omega_minus.matrix) - main}, {}, 0.0, 0.0};
    out.singular_values = largest_singular_values(out.residual.matrix, 16);
    out.hs_norm = out.residual.matrix.norm();
    out.tail_ratio = (out.singular_values.empty() || out.singular_values.front() == 0.0)
                         ? 0.0
                         : out.singular_values.back() / out.singular_values.front();
    return out;
}

} // namespace friedrichs
