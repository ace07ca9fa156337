// Serial reference vs OpenMP path for the two Monte Carlo kernels.
#include "covertrate/config.hpp"
#include "covertrate/detection.hpp"
#include "covertrate/harness.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using covert::Execution;
using covert::model::db_to_linear;

namespace {

void detection_kernel(benchmark::State& state, Execution exec) {
    const covert::model::NetworkGeometry geo{};
    const covert::model::NoiseProfile noise{db_to_linear(-33), db_to_linear(-33),
                                            db_to_linear(-30), db_to_linear(-30)};
    const covert::model::PowerPolicy pol{0.5, 0.5, db_to_linear(3.0)};
    const auto psi = covert::detection::psi_params(pol, geo.d_aw, geo.alpha);
    const std::vector<double> thetas{noise.sigma2_w + psi.psi1, noise.sigma2_w + 2 * psi.psi1};
    const auto trials = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            covert::detection::simulate_detection(100, trials, pol, geo, noise, thetas, 1, exec));
    }
    state.SetItemsProcessed(state.iterations() * trials);
}

void draw_kernel(benchmark::State& state, Execution exec) {
    covert::config::ExperimentConfig cfg;
    cfg.draws = state.range(0);
    cfg.geometry.d_ac = 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(covert::harness::evaluate_draws(cfg, false, exec));
    }
    state.SetItemsProcessed(state.iterations() * cfg.draws);
}

}  // namespace

BENCHMARK_CAPTURE(detection_kernel, serial, Execution::Serial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(detection_kernel, parallel, Execution::Parallel)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(draw_kernel, serial, Execution::Serial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(draw_kernel, parallel, Execution::Parallel)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
