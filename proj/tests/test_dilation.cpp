#include <friedrichs/dilation.hpp>
#include <friedrichs/errors.hpp>

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace friedrichs;

namespace {

struct Packet {
    double x0;
    double sigma;
    double k0;
};

// Carriers keep k0 * sigma >= 7 so the projected packets fit inside the box.
const std::vector<Packet> kSuite{{3.0, 1.0, 8.0}, {1.0, 1.5, 5.0}, {-2.0, 1.5, -5.0}, {0.5, 0.7, 10.0}, {-4.0, 1.0, 7.0}};

SampledFunction packet(const UniformGrid& g, const Packet& p)
{
    return SampledFunction::from(g, [&](double x) {
        return std::exp(-(x - p.x0) * (x - p.x0) / (2.0 * p.sigma * p.sigma)) * std::polar(1.0, p.k0 * x);
    });
}

double distance(const HalfLinePair& a, const HalfLinePair& b)
{
    HalfLinePair d(a.grid);
    for (std::size_t j = 0; j < a.first.size(); ++j) {
        d.first[j] = a.first[j] - b.first[j];
        d.second[j] = a.second[j] - b.second[j];
    }
    return d.norm();
}

double mellin_error(const UniformGrid& g, const Packet& p, std::size_t oversampling)
{
    const auto f = packet(g, p);
    const auto reference = even_odd_map(negative_halfline_projection(f));
    MellinOptions o;
    o.oversampling = oversampling;
    const auto mellin = apply_dilation_function(even_odd_map(f), projection_symbol(), o);
    return distance(mellin, reference) / f.norm();
}

} // namespace

TEST_SUITE("dilation")
{
    TEST_CASE("phi at the origin is i and tends to +-1")
    {
        CHECK(std::abs(phi(0.0) - cplx(0.0, 1.0)) <= 1e-15);
        CHECK(std::abs(phi(40.0) - 1.0) <= 1e-12);
        CHECK(std::abs(phi(-40.0) + 1.0) <= 1e-12);
        CHECK(std::abs(std::abs(phi(0.37)) - 1.0) <= 1e-15);
    }

    TEST_CASE("multipliers must reach their declared limits")
    {
        const Matrix2c one = Matrix2c::Identity();
        CHECK_THROWS_AS(DilationMultiplier("bad", [](double) { return Matrix2c::Identity(); }, one, 2.0 * one),
                        ConfigError);
        const auto m = projection_symbol();
        CHECK((m(std::numeric_limits<double>::infinity()) - m.limit_plus()).norm() == 0.0);
        CHECK((m(40.0) - m.limit_plus()).norm() <= 1e-12);
        CHECK((m(-40.0) - m.limit_minus()).norm() <= 1e-12);
    }

    TEST_CASE("constant multiplier scales the input")
    {
        const UniformGrid g(20.0, 256);
        const cplx c(0.7, -1.3);
        const auto f = packet(g, {2.0, 1.0, 1.0});
        const auto p = even_odd_map(f);
        const auto out = apply_dilation_function(p, constant_multiplier(c * Matrix2c::Identity()));
        double err = 0.0;
        for (std::size_t j = 0; j < p.first.size(); ++j) {
            err = std::max(err, std::abs(out.first[j] - c * p.first[j]));
            err = std::max(err, std::abs(out.second[j] - c * p.second[j]));
        }
        CHECK(err <= 1e-12);
    }

    TEST_CASE("Mellin route reproduces the Fourier projection on an off-centre packet")
    {
        const UniformGrid g(20.0, 512);
        CHECK(mellin_error(g, {3.0, 1.0, 8.0}, 4) <= 1e-5);
    }

    TEST_CASE("Mellin route error falls as the log grid is oversampled")
    {
        const UniformGrid g(20.0, 512);
        for (const Packet& p : kSuite) {
            CAPTURE(p.x0);
            CAPTURE(p.k0);
            const double e4 = mellin_error(g, p, 4);
            const double e8 = mellin_error(g, p, 8);
            CHECK(e4 <= 1e-4);
            CHECK(e8 < e4);
        }
    }

    TEST_CASE("plan rejects mass below the log floor")
    {
        const UniformGrid g(4.0, 64);
        HalfLinePair p(g);
        p.first[0] = 1.0;
        MellinOptions o;
        o.log_floor = 0.4;
        CHECK_THROWS_AS(apply_dilation_function(p, projection_symbol(), o), NumericalError);
    }

    TEST_CASE("plan validates options")
    {
        const UniformGrid g(4.0, 64);
        MellinOptions o;
        o.oversampling = 2;
        CHECK_THROWS_AS(DilationCalculus(g, projection_symbol(), o), ConfigError);
        o = MellinOptions{};
        o.log_floor = 0.7;
        CHECK_THROWS_AS(DilationCalculus(g, projection_symbol(), o), ConfigError);
    }

    TEST_CASE("plan rejects pairs from another grid")
    {
        const DilationCalculus plan(UniformGrid(4.0, 64), projection_symbol());
        CHECK_THROWS_AS(plan.apply(HalfLinePair(UniformGrid(4.0, 128))), ConfigError);
    }
}
