#include <friedrichs/errors.hpp>
#include <friedrichs/potential.hpp>

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using namespace friedrichs;

namespace {

std::filesystem::path scratch_dir()
{
    const char* env = std::getenv("FRIEDRICHS_TEST_TMP");
    std::filesystem::path dir = env ? env : std::filesystem::temp_directory_path() / "friedrichs-tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string exact(double v)
{
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

PotentialSpec bump(double c, double p = 2.0)
{
    PotentialSpec s;
    s.kind = PotentialKind::bump_power;
    s.amplitude = c;
    s.power = p;
    return s;
}

} // namespace

TEST_SUITE("potential")
{
    TEST_CASE("gaussian closed form and decay")
    {
        PotentialSpec s;
        CHECK(evaluate_potential(s, 0.0) == 1.0);
        CHECK(evaluate_potential(s, 20.0) <= 1e-3);
        CHECK(evaluate_potential(s, -20.0) <= 1e-3);
        const UniformGrid g(20.0, 2048);
        const auto sp = sample_potential(s, g);
        for (std::size_t k = 0; k < g.size(); k += 97) {
            CHECK(sp.u.values[k].real() == evaluate_potential(s, g.point(k)));
            CHECK(sp.modulus_squared[k] == std::norm(sp.u.values[k]));
        }
        CHECK(sp.warnings.empty());
    }

    TEST_CASE("bump closed form")
    {
        const auto s = bump(3.0);
        CHECK(evaluate_potential(s, 0.0) == 3.0);
        CHECK(evaluate_potential(s, 1.0) == 0.0);
        CHECK(evaluate_potential(s, -1.0) == 0.0);
        CHECK(evaluate_potential(s, 1.5) == 0.0);
        CHECK(evaluate_potential(s, 0.5) == doctest::Approx(3.0 * 0.5625));
    }

    TEST_CASE("lorentzian closed form")
    {
        PotentialSpec s;
        s.kind = PotentialKind::lorentzian;
        s.amplitude = 2.0;
        s.center = 1.0;
        s.width = 0.5;
        CHECK(evaluate_potential(s, 1.0) == 2.0);
        CHECK(evaluate_potential(s, 1.5) == doctest::Approx(1.0));
    }

    TEST_CASE("kind names round-trip")
    {
        for (auto k : {PotentialKind::zero, PotentialKind::gaussian, PotentialKind::lorentzian, PotentialKind::bump_power,
                       PotentialKind::table}) {
            CHECK(parse_potential_kind(to_string(k)) == k);
        }
        CHECK_THROWS_AS(parse_potential_kind("square_well"), ConfigError);
    }

    TEST_CASE("potential parameter validation")
    {
        const UniformGrid g(20.0, 256);
        PotentialSpec s;
        s.amplitude = 0.0;
        CHECK_THROWS_AS(sample_potential(s, g), ConfigError);
        s.amplitude = -1.0;
        CHECK_THROWS_AS(sample_potential(s, g), ConfigError);
        s = PotentialSpec{};
        s.width = 0.0;
        CHECK_THROWS_AS(sample_potential(s, g), ConfigError);
        s = bump(1.0);
        s.support_b = s.support_a;
        CHECK_THROWS_AS(sample_potential(s, g), ConfigError);
        s = PotentialSpec{};
        s.width = 10.0;  // |u(+-L)| = e^{-2} is far above 1e-3
        CHECK_THROWS_AS(sample_potential(s, g), ConfigError);
    }

    TEST_CASE("edge powers below one are allowed with a warning")
    {
        const UniformGrid g(20.0, 1024);
        const auto sp = sample_potential(bump(1.0, 0.4), g);
        CHECK_FALSE(sp.warnings.empty());
        CHECK(sample_potential(bump(1.0, 2.0), g).warnings.empty());
    }

    TEST_CASE("table at four times the resolution resamples to the closed form")
    {
        const UniformGrid g(20.0, 2048);
        const auto s = bump(3.0);
        const auto path = scratch_dir() / "bump_table.csv";
        {
            std::ofstream out(path);
            out << "x,re_u\n";
            const UniformGrid fine(20.0, 4 * g.size());
            for (std::size_t k = 0; k < fine.size(); ++k) {
                const double x = fine.point(k);
                out << exact(x) << ',' << exact(evaluate_potential(s, x)) << '\n';
            }
        }
        PotentialSpec t;
        t.kind = PotentialKind::table;
        t.table_path = path.string();
        const auto sp = sample_potential(t, g);
        double err = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            err = std::max(err, std::abs(sp.u.values[k] - evaluate_potential(s, g.point(k))));
        }
        CHECK(err <= 1e-8);

        t.amplitude = 2.0;
        const auto scaled = sample_potential(t, g);
        CHECK(scaled.u.values[g.size() / 2].real() == doctest::Approx(2.0 * sp.u.values[g.size() / 2].real()));
        CHECK_THROWS_AS(evaluate_potential(t, 0.0), ConfigError);
    }

    TEST_CASE("complex table with an imaginary column")
    {
        const UniformGrid g(4.0, 64);
        const auto path = scratch_dir() / "complex_table.csv";
        {
            std::ofstream out(path);
            out << "x,re_u,im_u\n";
            for (int k = -40; k <= 40; ++k) {
                const double x = 0.05 * k;
                const double a = std::exp(-4.0 * x * x);
                out << exact(x) << ',' << exact(a) << ',' << exact(-a) << '\n';
            }
        }
        PotentialSpec t;
        t.kind = PotentialKind::table;
        t.table_path = path.string();
        const auto sp = sample_potential(t, g);
        const auto v = sp.u.values[g.size() / 2];
        CHECK(v.imag() == doctest::Approx(-v.real()));
        CHECK(v.real() > 0.9);
    }

    TEST_CASE("malformed tables are rejected")
    {
        const UniformGrid g(4.0, 64);
        const auto dir = scratch_dir();
        PotentialSpec t;
        t.kind = PotentialKind::table;

        t.table_path = (dir / "missing.csv").string();
        std::filesystem::remove(t.table_path);
        CHECK_THROWS_AS(sample_potential(t, g), ConfigError);

        const auto write = [&](const std::string& name, const std::string& body) {
            const auto p = dir / name;
            std::ofstream(p) << body;
            return p.string();
        };
        t.table_path = write("bad_number.csv", "x,u\n0,1\n0.1,abc\n0.2,0\n0.3,0\n");
        CHECK_THROWS_AS(sample_potential(t, g), ConfigError);
        t.table_path = write("unordered.csv", "x,u\n0,1\n0.2,1\n0.1,0\n0.3,0\n");
        CHECK_THROWS_AS(sample_potential(t, g), ConfigError);
        t.table_path = write("columns.csv", "x,u\n0,1,2,3\n0.1,0,0,0\n0.2,0,0,0\n0.3,0,0,0\n");
        CHECK_THROWS_AS(sample_potential(t, g), ConfigError);
        t.table_path = write("short.csv", "x,u\n0,1\n0.1,0\n");
        CHECK_THROWS_AS(sample_potential(t, g), ConfigError);
        t.table_path = write("empty.csv", "");
        CHECK_THROWS_AS(sample_potential(t, g), ConfigError);
        t.table_path.clear();
        CHECK_THROWS_AS(sample_potential(t, g), ConfigError);
    }

    TEST_CASE("Hoelder estimate of |x|^0.75 at the origin")
    {
        const UniformGrid g(4.0, 4096);
        const auto u = SampledFunction::from(g, [](double x) { return std::pow(std::abs(x), 0.75); });
        const auto est = holder_exponent_estimate(u, 0.0, 0.25);
        CHECK(est.exponent >= 0.70);
        CHECK(est.exponent <= 0.80);
        CHECK(est.pairs >= 16);
    }

    TEST_CASE("Hoelder estimate of a smooth potential is one")
    {
        const UniformGrid g(20.0, 2048);
        const auto sp = sample_potential(PotentialSpec{}, g);
        for (double x0 : {-1.5, 0.7, 1.0}) {
            const auto est = holder_exponent_estimate(sp.u, x0, 0.25);
            CAPTURE(x0);
            CHECK(est.exponent >= 0.95);
            CHECK(est.exponent <= 1.05);
        }
    }

    TEST_CASE("Hoelder estimate at a bump edge follows min(p, 1)")
    {
        const UniformGrid g(20.0, 8192);
        const auto est = holder_exponent_estimate(sample_potential(bump(1.0, 2.0), g).u, 1.0, 0.25);
        CHECK(est.exponent >= 0.9);
        CHECK(est.exponent <= 1.1);
        const auto rough = holder_exponent_estimate(sample_potential(bump(1.0, 0.4), g).u, 1.0, 0.25);
        CHECK(rough.exponent < 0.5);
    }

    TEST_CASE("Hoelder estimate needs variation in the window")
    {
        const UniformGrid g(20.0, 2048);
        const auto u = sample_potential(bump(1.0), g).u;
        CHECK_THROWS_AS(holder_exponent_estimate(u, 5.0, 0.25), NumericalError);
        CHECK_THROWS_AS(holder_exponent_estimate(u, 19.9, 0.25), ConfigError);
    }
}
