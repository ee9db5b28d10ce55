#include "palette.hpp"

#include <friedrichs/boundary_symbol.hpp>
#include <friedrichs/cauchy.hpp>
#include <friedrichs/errors.hpp>
#include <friedrichs/operator_io.hpp>
#include <friedrichs/potential.hpp>
#include <friedrichs/scattering.hpp>
#include <friedrichs/waveop.hpp>

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <vector>

using namespace friedrichs;

namespace {

struct Setup {
    SampledPotential potential;
    BoundaryValues bv;
    ScatteringData sd;
    StationaryWaveOperator wave;
};

Setup build(const PotentialSpec& spec, const UniformGrid& g)
{
    auto p = sample_potential(spec, g);
    auto bv = boundary_values(p.u);
    auto sd = scattering_matrix(p.u, bv);
    auto wave = build_stationary_wave_operator(p.u, bv, sd);
    return {std::move(p), std::move(bv), std::move(sd), std::move(wave)};
}

PotentialSpec gaussian(double c)
{
    PotentialSpec s;
    s.amplitude = c;
    return s;
}

PotentialSpec zero()
{
    PotentialSpec s;
    s.kind = PotentialKind::zero;
    return s;
}

struct Packet {
    double x0;
    double sigma;
    double k0;
};

const std::vector<Packet> kPackets{{3.0, 1.0, 0.0}, {-3.0, 1.0, 0.0}, {2.0, 0.7, 0.0}, {-5.0, 1.5, 0.0}, {4.0, 1.0, 2.0}, {1.0, 1.0, -3.0}};

SampledFunction packet(const UniformGrid& g, const Packet& p)
{
    auto f = SampledFunction::from(g, [&](double x) {
        return std::exp(-(x - p.x0) * (x - p.x0) / (2.0 * p.sigma * p.sigma)) * std::polar(1.0, p.k0 * x);
    });
    const double n = f.norm();
    for (auto& v : f.values) {
        v /= n;
    }
    return f;
}

Eigen::VectorXcd vec(const SampledFunction& f)
{
    return Eigen::Map<const Eigen::VectorXcd>(f.values.data(), static_cast<Eigen::Index>(f.values.size()));
}

double grid_norm(const UniformGrid& g, const Eigen::VectorXcd& v)
{
    return std::sqrt(g.spacing()) * v.norm();
}

std::filesystem::path scratch_dir()
{
    const char* env = std::getenv("FRIEDRICHS_TEST_TMP");
    std::filesystem::path dir = env ? env : std::filesystem::temp_directory_path() / "friedrichs-tests";
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_SUITE("waveop")
{
    TEST_CASE("zero potential gives identities")
    {
        const UniformGrid g(10.0, 64);
        const auto s = build(zero(), g);
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(64, 64);
        CHECK((s.wave.omega_minus.matrix - id).norm() == 0.0);
        CHECK((build_wave_operator_plus(s.wave.omega_minus, s.sd).matrix - id).norm() == 0.0);
        const auto psi = psi_weight(s.potential.u, s.bv);
        CHECK(commutator_kernel(s.potential.u, psi).hs_norm == 0.0);
        const auto tr = theorem_residual(s.wave.omega_minus, s.sd);
        CHECK(tr.residual.matrix.norm() <= 1e-14);

        const auto f = packet(g, {1.0, 1.0, 0.0});
        const auto td = time_dependent_oracle(s.potential.u, f, std::vector<double>{0.4, 0.2, 0.1});
        double err = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            err = std::max(err, std::abs(td.approximant.values[k] - f.values[k]));
        }
        CHECK(err <= 1e-12);
    }

    TEST_CASE("projection matrix is an orthogonal projection")
    {
        const UniformGrid g(10.0, 128);
        const Eigen::MatrixXcd P = projection_matrix(g);
        CHECK((P * P - P).norm() <= 1e-12);
        CHECK((P - P.adjoint()).norm() <= 1e-12);
        CHECK(P.trace().real() == doctest::Approx(64.0).epsilon(1e-12));
    }

    TEST_CASE("even/odd conjugation matches the vector map")
    {
        const UniformGrid g(10.0, 32);
        const Eigen::MatrixXcd A = Eigen::MatrixXcd::Random(32, 32);
        const Eigen::MatrixXcd B = to_even_odd(A);
        const auto f = packet(g, {1.0, 1.0, 1.0});
        const Eigen::VectorXcd af = A * vec(f);
        const auto lhs = even_odd_map(SampledFunction(g, ComplexVector(af.data(), af.data() + af.size())));
        const auto p = even_odd_map(f);
        Eigen::VectorXcd pv(32);
        for (std::size_t j = 0; j < 16; ++j) {
            pv(static_cast<Eigen::Index>(j)) = p.first[j];
            pv(static_cast<Eigen::Index>(16 + j)) = p.second[j];
        }
        const Eigen::VectorXcd rhs = B * pv;
        for (std::size_t j = 0; j < 16; ++j) {
            CHECK(std::abs(lhs.first[j] - rhs(static_cast<Eigen::Index>(j))) <= 1e-12);
            CHECK(std::abs(lhs.second[j] - rhs(static_cast<Eigen::Index>(16 + j))) <= 1e-12);
        }
    }

    TEST_CASE("stationary decomposition closes on the palette")
    {
        const UniformGrid g(20.0, 256);
        for (const auto& entry : palette()) {
            CAPTURE(entry.name);
            const auto s = build(entry.spec, g);
            const Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Identity(256, 256) + s.wave.projected_scattering + s.wave.remainder;
            CHECK((s.wave.omega_minus.matrix - rebuilt).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK(s.wave.decomposition_error <= 1e-12);
        }
    }

    TEST_CASE("weak gaussian: stationary and time-dependent wave operators agree")
    {
        const UniformGrid g(20.0, 512);
        const auto s = build(gaussian(0.3), g);
        const auto f = packet(g, {3.0, 1.0, 0.0});
        const auto td = time_dependent_oracle(s.potential.u, f, std::vector<double>{0.4, 0.2, 0.1});
        REQUIRE(td.cauchy_differences.size() == 2);
        CHECK(td.cauchy_differences[1] < td.cauchy_differences[0]);
        const Eigen::VectorXcd om = s.wave.omega_minus.apply(f.values);
        const double rel = grid_norm(g, om - vec(td.approximant));
        CHECK(rel <= 5e-2);
    }

    TEST_CASE("time-dependent oracle validates its inputs")
    {
        const UniformGrid g(20.0, 128);
        const auto s = build(gaussian(0.3), g);
        auto f = packet(g, {3.0, 1.0, 0.0});
        CHECK_THROWS_AS(time_dependent_oracle(s.potential.u, f, std::vector<double>{0.1, 0.2}), ConfigError);
        CHECK_THROWS_AS(time_dependent_oracle(s.potential.u, f, std::vector<double>{}), ConfigError);
        for (auto& v : f.values) {
            v *= 2.0;
        }
        CHECK_THROWS_AS(time_dependent_oracle(s.potential.u, f, std::vector<double>{0.4, 0.2}), ConfigError);
    }

    TEST_CASE("isometry and intertwining on wavepackets")
    {
        const UniformGrid g(20.0, 512);
        for (double c : {0.3, 0.7}) {
            const auto s = build(gaussian(c), g);
            const Eigen::MatrixXcd H = grid_hamiltonian(s.potential.u);
            for (const auto& p : kPackets) {
                CAPTURE(c);
                CAPTURE(p.x0);
                const auto f = packet(g, p);
                const Eigen::VectorXcd om = s.wave.omega_minus.matrix * vec(f);
                CHECK(grid_norm(g, om) >= 0.98);
                CHECK(grid_norm(g, om) <= 1.02);
                Eigen::VectorXcd h0f = vec(f);
                for (std::size_t k = 0; k < g.size(); ++k) {
                    h0f(static_cast<Eigen::Index>(k)) *= g.point(k);
                }
                const Eigen::VectorXcd r = H * om - s.wave.omega_minus.matrix * h0f;
                CHECK(grid_norm(g, r) <= 5e-2);
            }
        }
    }

    TEST_CASE("isometry defect at least halves under refinement until the box floor")
    {
        const auto f_of = [](const UniformGrid& g) { return packet(g, {3.0, 1.0, 0.0}); };
        std::vector<double> defects;
        for (std::size_t n : {256u, 512u, 1024u}) {
            const UniformGrid g(20.0, n);
            const auto s = build(gaussian(1.0), g);
            defects.push_back(std::abs(grid_norm(g, s.wave.omega_minus.matrix * vec(f_of(g))) - 1.0));
        }
        for (std::size_t i = 1; i < defects.size(); ++i) {
            CAPTURE(defects[i - 1]);
            CHECK(defects[i] <= 0.65 * defects[i - 1]);
        }
    }

    TEST_CASE("Omega_+ from Omega_- and S")
    {
        const UniformGrid g(20.0, 512);
        for (double c : {0.3, 0.7}) {
            const auto s = build(gaussian(c), g);
            const auto plus = build_wave_operator_plus(s.wave.omega_minus, s.sd);
            for (const auto& p : kPackets) {
                CAPTURE(c);
                CAPTURE(p.x0);
                const auto f = packet(g, p);
                Eigen::VectorXcd sf = vec(f);
                Eigen::VectorXcd csf = vec(f);
                for (std::size_t k = 0; k < g.size(); ++k) {
                    sf(static_cast<Eigen::Index>(k)) *= s.sd.S[k];
                    csf(static_cast<Eigen::Index>(k)) *= std::conj(s.sd.S[k]);
                }
                const Eigen::VectorXcd a = plus.matrix * vec(f);
                const Eigen::VectorXcd b = s.wave.omega_minus.matrix * csf;
                CHECK(grid_norm(g, a) == doctest::Approx(grid_norm(g, b)).epsilon(1e-13));
                const Eigen::VectorXcd prod = plus.matrix.adjoint() * (s.wave.omega_minus.matrix * vec(f));
                CHECK(grid_norm(g, prod - sf) <= 1e-2);
            }
        }
    }

    TEST_CASE("near-resonant gaussian: residuals shrink under refinement")
    {
        // c = 1 sits just below the threshold for a bound state; the resonance
        // is narrower than the coarse grid spacing.
        std::vector<double> inter;
        std::vector<double> pm;
        for (std::size_t n : {512u, 1024u, 2048u}) {
            const UniformGrid g(20.0, n);
            const auto s = build(gaussian(1.0), g);
            const auto plus = build_wave_operator_plus(s.wave.omega_minus, s.sd);
            const Eigen::MatrixXcd H = grid_hamiltonian(s.potential.u);
            const auto f = packet(g, {2.0, 0.7, 0.0});
            Eigen::VectorXcd h0f = vec(f);
            Eigen::VectorXcd sf = vec(f);
            for (std::size_t k = 0; k < g.size(); ++k) {
                h0f(static_cast<Eigen::Index>(k)) *= g.point(k);
                sf(static_cast<Eigen::Index>(k)) *= s.sd.S[k];
            }
            const Eigen::VectorXcd om = s.wave.omega_minus.matrix * vec(f);
            inter.push_back(grid_norm(g, H * om - s.wave.omega_minus.matrix * h0f));
            pm.push_back(grid_norm(g, plus.matrix.adjoint() * om - sf));
        }
        CHECK(inter[1] < 0.5 * inter[0]);
        CHECK(inter[2] < 0.5 * inter[1]);
        CHECK(pm[2] < 0.5 * pm[1]);
        CHECK(inter[2] <= 5e-2);
        CHECK(pm[2] <= 1e-2);
    }

    TEST_CASE("commutator kernel vanishes where u is constant")
    {
        const UniformGrid g(20.0, 512);
        const auto u = SampledFunction::from(g, [](double x) {
            const double a = std::abs(x);
            return a <= 2.0 ? 0.5 : 0.5 * std::exp(-(a - 2.0) * (a - 2.0));
        });
        const auto bv = boundary_values(u);
        const auto k = commutator_kernel(u, psi_weight(u, bv));
        double inside = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            for (std::size_t j = 0; j < g.size(); ++j) {
                // keep one cell away from the plateau edge for the centred difference
                if (std::abs(g.point(i)) < 2.0 - g.spacing() && std::abs(g.point(j)) < 2.0 - g.spacing()) {
                    inside = std::max(inside, std::abs(k.kernel.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
                }
            }
        }
        CHECK(inside == 0.0);
        CHECK(k.hs_norm > 0.0);
    }

    TEST_CASE("bump commutator kernel has a grid-stable HS norm")
    {
        PotentialSpec b;
        b.kind = PotentialKind::bump_power;
        b.amplitude = 0.7;
        std::vector<double> hs;
        for (std::size_t n : {1024u, 2048u}) {
            const UniformGrid g(20.0, n);
            const auto u = sample_potential(b, g).u;
            hs.push_back(commutator_kernel(u, psi_weight(u, boundary_values(u))).hs_norm);
        }
        CHECK(std::abs(hs[1] - hs[0]) <= 0.02 * hs[1]);
    }

    TEST_CASE("residual K is compact-like and matches the direct remainder")
    {
        std::vector<double> sigma;
        for (std::size_t n : {256u, 512u}) {
            const UniformGrid g(20.0, n);
            const auto s = build(gaussian(0.3), g);
            const auto tr = theorem_residual(s.wave.omega_minus, s.sd);
            REQUIRE(tr.singular_values.size() == 16);
            CHECK(tr.residual.representation == Representation::even_odd);
            CHECK(tr.tail_ratio < 1.0);
            const double direct = largest_singular_values(to_even_odd(s.wave.remainder), 1)[0];
            CHECK(std::abs(tr.singular_values[0] - direct) <= 0.15 * direct);
            sigma.push_back(tr.singular_values[0]);
        }
        CHECK(std::abs(sigma[1] - sigma[0]) <= 0.1 * sigma[1]);
    }

    TEST_CASE("operator dumps round-trip")
    {
        const UniformGrid g(20.0, 64);
        const auto s = build(gaussian(1.0), g);
        const auto path = scratch_dir() / "omega.bin";
        write_operator_matrix(path, s.wave.omega_minus);
        CHECK(std::filesystem::file_size(path) == 32 + 64 * 64 * 16);
        const auto back = read_operator_matrix(path);
        CHECK(back.grid == g);
        CHECK(back.representation == Representation::position);
        CHECK((back.matrix - s.wave.omega_minus.matrix).norm() == 0.0);

        std::string header(8, '\0');
        std::ifstream(path, std::ios::binary).read(header.data(), 8);
        CHECK(header == "FRDKOPM1");

        const auto bad = scratch_dir() / "bad.bin";
        std::ofstream(bad, std::ios::binary) << "NOTADUMPxxxxxxxxxxxxxxxxxxxxxxxx";
        CHECK_THROWS_AS(read_operator_matrix(bad), ConfigError);
        std::filesystem::resize_file(path, 100);
        CHECK_THROWS_AS(read_operator_matrix(path), ConfigError);
        CHECK_THROWS_AS(read_operator_matrix(scratch_dir() / "absent.bin"), ConfigError);
    }

    TEST_CASE("boundary symbol determinants follow the scattering data")
    {
        const UniformGrid g(20.0, 2048);
        for (const auto& entry : palette()) {
            CAPTURE(entry.name);
            const auto p = sample_potential(entry.spec, g);
            const auto sd = scattering_matrix(p.u, boundary_values(p.u));
            const auto rep = boundary_symbol(sd);
            CHECK(rep.det_gamma3_defect <= 1e-8);
            CHECK(rep.det_gamma1_defect <= 1e-8);
            CHECK(rep.corner_mismatch <= 1e-6);
            CHECK(rep.unitarity_defect <= 1e-8);
            REQUIRE(sd.winding);
            CHECK(rep.square_winding == *sd.winding);
            CHECK(rep.square_winding == -static_cast<int>(entry.eigenvalues));

            // gamma2(x) = Gamma(x, +inf) has det s(-x), gamma4(x) = Gamma(x, -inf) has det s(x)
            const auto& g2 = rep.edges[1];
            const auto& g4 = rep.edges[3];
            double err = 0.0;
            for (std::size_t i = 0; i < g2.parameter.size(); ++i) {
                const double x = g2.parameter[i];
                if (!std::isfinite(x) || x == 0.0) {
                    continue;
                }
                const std::size_t k = g.nearest_index(x);
                if (std::abs(g.point(k) - x) > 1e-12) {
                    continue;
                }
                err = std::max(err, std::abs(g2.determinant[i] - sd.S[g.mirror(k)]));
            }
            for (std::size_t i = 0; i < g4.parameter.size(); ++i) {
                const double x = g4.parameter[i];
                if (!std::isfinite(x) || x == 0.0) {
                    continue;
                }
                const std::size_t k = g.nearest_index(x);
                if (std::abs(g.point(k) - x) > 1e-12) {
                    continue;
                }
                err = std::max(err, std::abs(g4.determinant[i] - sd.S[k]));
            }
            CHECK(err <= 1e-10);
        }
    }

    TEST_CASE("boundary symbol y-edges reach the phi limits")
    {
        const cplx se(0.3, 0.4);
        const cplx so(0.1, -0.2);
        const Matrix2c at_cutoff = boundary_symbol_value(se, so, 40.0);
        const Matrix2c at_inf = boundary_symbol_value(se, so, std::numeric_limits<double>::infinity());
        CHECK((at_cutoff - at_inf).norm() <= 1e-12);
        CHECK((boundary_symbol_value(se, so, -40.0) - boundary_symbol_value(se, so, -std::numeric_limits<double>::infinity())).norm() <= 1e-12);
        // Gamma(x, +inf) = 1 + diag-free form with phi = 1
        const Matrix2c expected = (Matrix2c() << 0.5 * (se - so + 1.0), 0.5 * (so - (se - 1.0)),
                                   0.5 * (so - (se - 1.0)), 0.5 * (se - so + 1.0))
                                      .finished();
        CHECK((at_inf - expected).norm() <= 1e-15);
    }
}
