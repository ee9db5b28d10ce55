#include <friedrichs/cauchy.hpp>
#include <friedrichs/dilation.hpp>
#include <friedrichs/levinson.hpp>
#include <friedrichs/potential.hpp>
#include <friedrichs/scattering.hpp>
#include <friedrichs/waveop.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

using namespace friedrichs;

namespace {

SampledFunction gaussian_u(const UniformGrid& g, double c)
{
    return SampledFunction::from(g, [c](double x) { return cplx(c * std::exp(-0.5 * x * x)); });
}

void BM_FourierTransform(benchmark::State& state)
{
    const UniformGrid g(20.0, static_cast<std::size_t>(state.range(0)));
    const auto f = gaussian_u(g, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fourier_transform(f, Direction::forward));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FourierTransform)->RangeMultiplier(2)->Range(512, 16384)->Complexity();

void BM_BoundaryValues(benchmark::State& state)
{
    const UniformGrid g(20.0, static_cast<std::size_t>(state.range(0)));
    const auto u = gaussian_u(g, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(boundary_values(u));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BoundaryValues)->RangeMultiplier(2)->Range(512, 4096)->Complexity(benchmark::oNSquared);

void BM_MellinProjection(benchmark::State& state)
{
    const UniformGrid g(20.0, 512);
    const auto p = even_odd_map(gaussian_u(g, 1.0));
    MellinOptions o;
    o.oversampling = static_cast<std::size_t>(state.range(0));
    const DilationCalculus plan(g, projection_symbol(), o);
    for (auto _ : state) {
        benchmark::DoNotOptimize(plan.apply(p));
    }
}
BENCHMARK(BM_MellinProjection)->Arg(4)->Arg(8)->Arg(16);

void BM_Levinson(benchmark::State& state)
{
    PotentialSpec s;
    s.kind = PotentialKind::bump_power;
    s.amplitude = 3.0;
    const UniformGrid g(20.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_levinson(s, g));
    }
}
BENCHMARK(BM_Levinson)->Arg(1024)->Arg(2048)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_StationaryWaveOperator(benchmark::State& state)
{
    const UniformGrid g(20.0, static_cast<std::size_t>(state.range(0)));
    const auto u = gaussian_u(g, 0.3);
    const auto bv = boundary_values(u);
    const auto sd = scattering_matrix(u, bv);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_stationary_wave_operator(u, bv, sd));
    }
}
BENCHMARK(BM_StationaryWaveOperator)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
