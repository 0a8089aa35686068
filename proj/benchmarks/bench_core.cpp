// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the hot paths: coverage evaluation, per-trial DoF,
// the delay optimizer, and closed-form CCDF queries.

#include <benchmark/benchmark.h>

#include <vector>

#include "tia/align.hpp"
#include "tia/analytic.hpp"
#include "tia/arc.hpp"
#include "tia/dof.hpp"
#include "tia/geo.hpp"
#include "tia/mc.hpp"
#include "tia/rng.hpp"

namespace {

tia::NormalizedDelayMatrix sample_matrix(std::uint64_t trial) {
    tia::TrialRng rng(42, trial);
    return tia::sample_uncoordinated(rng);
}

void BM_UncoveredMeasure(benchmark::State& state) {
    const tia::Arc desired(0.2, 0.4);
    const double starts[2] = {0.05, 0.55};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            tia::uncovered_measure(desired, std::span<const double>(starts, 2), 0.4));
    }
}
BENCHMARK(BM_UncoveredMeasure);

void BM_SumDof(benchmark::State& state) {
    const tia::NormalizedDelayMatrix d = sample_matrix(0);
    const tia::DutyCycle rho(0.43);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tia::sum_dof(d, rho));
    }
}
BENCHMARK(BM_SumDof);

void BM_UncoordinatedTrial(benchmark::State& state) {
    const tia::DutyCycle rho(0.5);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        tia::TrialRng rng(7, trial++);
        benchmark::DoNotOptimize(tia::sum_dof(tia::sample_uncoordinated(rng), rho).sum);
    }
}
BENCHMARK(BM_UncoordinatedTrial);

void BM_OptimizeDelays(benchmark::State& state) {
    const tia::NormalizedDelayMatrix b = sample_matrix(3);
    const tia::DutyCycle rho(0.43);
    tia::OptimizerSettings settings;
    settings.grid = static_cast<int>(state.range(0));
    settings.refine = 4096;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tia::optimize_delays(b, rho, settings).dof.sum);
    }
}
BENCHMARK(BM_OptimizeDelays)->Arg(32)->Arg(128);

void BM_CcdfPhi(benchmark::State& state) {
    const tia::DutyCycle rho(0.43);
    const tia::MixedDistribution d = tia::pdf_phi(rho);
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-4;
        if (x > 1.29) {
            x = 0.0;
        }
        benchmark::DoNotOptimize(d.ccdf(x));
    }
}
BENCHMARK(BM_CcdfPhi);

void BM_SatelliteDelayMatrix(benchmark::State& state) {
    const tia::GeoScenario scenario;
    std::uint64_t trial = 0;
    for (auto _ : state) {
        tia::TrialRng rng(11, trial++);
        benchmark::DoNotOptimize(
            tia::delay_matrix(tia::sample_ground_stations(rng, scenario), scenario));
    }
}
BENCHMARK(BM_SatelliteDelayMatrix);

}  // namespace

BENCHMARK_MAIN();
