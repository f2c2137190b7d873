// SPDX-License-Identifier: Apache-2.0
//
// Serial reference loop versus the OpenMP trial loop. The two paths produce
// bitwise-identical results (asserted in the unit tests); this target measures
// what the parallel schedule buys on the host machine.

#include <benchmark/benchmark.h>

#include "risim/config.hpp"
#include "risim/harness.hpp"
#include "risim/theory.hpp"

using namespace risim;

namespace {

ExperimentConfig sweep_config(bool parallel) {
    ExperimentConfig cfg;
    cfg.m_antennas = 4;
    cfg.n_elements = 40;
    cfg.t_words = 16;
    cfg.trials = 64;
    cfg.sweep_var = "none";
    cfg.sweep_values.clear();
    cfg.schemes = {Scheme::proposed};
    cfg.parallel = parallel;
    return cfg;
}

void bench_trial_loop(benchmark::State& state, bool parallel) {
    const ExperimentConfig cfg = sweep_config(parallel);
    const SceneParams scene = derive_scene(cfg);
    const SchemeContext ctx = prepare_scheme(scene, cfg, Scheme::proposed);
    for (auto _ : state) {
        const std::vector<TrialOutcome> outs = run_scheme_trials(scene, ctx, cfg);
        benchmark::DoNotOptimize(outs.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(cfg.trials));
}

void bench_power_study(benchmark::State& state, bool parallel) {
    TheoryParams p;
    p.n_elements = 64;
    p.k_r = 2.0;
    p.t_words = 32;
    TheoryMcOptions opts;
    opts.parallel = parallel;
    for (auto _ : state) {
        const double power = simulated_received_power(p, {32}, 128, 7, opts)[0];
        benchmark::DoNotOptimize(power);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 128);
}

}  // namespace

BENCHMARK_CAPTURE(bench_trial_loop, serial, false);
BENCHMARK_CAPTURE(bench_trial_loop, openmp, true);
BENCHMARK_CAPTURE(bench_power_study, serial, false);
BENCHMARK_CAPTURE(bench_power_study, openmp, true);

BENCHMARK_MAIN();
