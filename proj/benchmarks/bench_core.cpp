#include <benchmark/benchmark.h>

#include <numbers>

#include "centralspin/geometric_phase.hpp"
#include "centralspin/model.hpp"
#include "centralspin/oracle.hpp"

using namespace centralspin;

static void DecoherenceFactor(benchmark::State& state) {
    const auto bath = BathModel::homogeneous(static_cast<std::size_t>(state.range(0)), 1.0, 0.1);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(decoherence_factor(bath, t));
        t += 1e-3;
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(DecoherenceFactor)->RangeMultiplier(4)->Range(1, 1024)->Complexity();

static void DecoherenceFactorExact(benchmark::State& state) {
    const auto bath = BathModel::homogeneous(static_cast<std::size_t>(state.range(0)), 1.0, 0.1);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::decoherence_factor_exact(bath, t));
        t += 1e-3;
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(DecoherenceFactorExact)->RangeMultiplier(4)->Range(1, 1024)->Complexity();

static void GpExact(benchmark::State& state) {
    const auto central = CentralSpinParams::make(1.0, std::numbers::pi / 2);
    const auto bath = BathModel::homogeneous(static_cast<std::size_t>(state.range(0)), 1.0, 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(gp_exact(central, bath, 1).phase);
}
BENCHMARK(GpExact)->Arg(10)->Arg(100);

static void GpKinematic(benchmark::State& state) {
    const auto central = CentralSpinParams::make(1.0, std::numbers::pi / 3);
    const auto bath = BathModel::homogeneous(static_cast<std::size_t>(state.range(0)), 1.0, 0.05);
    QuadratureSpec spec;
    spec.tolerance = 1e-8;
    for (auto _ : state) benchmark::DoNotOptimize(gp_kinematic(central, bath, 1, spec).phase);
}
BENCHMARK(GpKinematic)->Arg(10);

static void FullHilbertEvolution(benchmark::State& state) {
    const auto central = CentralSpinParams::make(1.0, std::numbers::pi / 2);
    const auto bath = BathModel::homogeneous(static_cast<std::size_t>(state.range(0)), 1.0, 0.5);
    for (auto _ : state) {
        oracle::FullHilbertEvolver evolver(central, bath);
        benchmark::DoNotOptimize(evolver.reduced_density(1.3));
    }
}
BENCHMARK(FullHilbertEvolution)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
