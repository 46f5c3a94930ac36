#include <benchmark/benchmark.h>

#include "cmcx/cmc.hpp"
#include "cmcx/counts.hpp"
#include "cmcx/explore.hpp"
#include "cmcx/rng.hpp"

namespace {

void bm_greedy_control(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const cmcx::Cmc env = cmcx::build_embedded(n);
    const cmcx::CountTensor counts(env.n_controls(), env.n_states());
    const cmcx::DirichletPrior prior;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cmcx::pig_greedy_control(0, counts, prior));
    }
}

void bm_jpig_pair(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const cmcx::Cmc env = cmcx::build_embedded(n);
    const cmcx::CountTensor counts(env.n_controls(), env.n_states());
    const cmcx::DirichletPrior prior;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cmcx::jpig_greedy_pair(counts, prior));
    }
}

void bm_rollout_control(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const cmcx::Cmc env = cmcx::build_embedded(n);
    const cmcx::CountTensor counts(env.n_controls(), env.n_states());
    const cmcx::DirichletPrior prior;
    const cmcx::RolloutParams params{.mc_repeats = 1, .nesting_depth = 1};
    cmcx::RngStream rng(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            cmcx::rollout_control(0, counts, 0, 20, env, prior, params, rng));
    }
}

void bm_explore_run(benchmark::State& state) {
    const cmcx::Cmc env = cmcx::build_embedded(
        static_cast<int>(state.range(0)));
    const cmcx::DirichletPrior prior;
    cmcx::Strategy strategy;
    strategy.kind = cmcx::Strategy::Kind::pig_greedy;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            cmcx::explore(strategy, env, 0, 20, prior, 7));
    }
}

}  // namespace

BENCHMARK(bm_greedy_control)->Arg(10)->Arg(100);
BENCHMARK(bm_jpig_pair)->Arg(10)->Arg(100);
BENCHMARK(bm_rollout_control)->Arg(10)->Arg(100);
BENCHMARK(bm_explore_run)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
