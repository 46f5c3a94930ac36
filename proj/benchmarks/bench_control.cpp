#include <benchmark/benchmark.h>

#include "cmcx/cmc.hpp"
#include "cmcx/control.hpp"

namespace {

void bm_evaluate_policy(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const cmcx::Cmc env = cmcx::build_embedded(n);
    const cmcx::DiscountedTask task = cmcx::DiscountedTask::from_cmc(env, 0.99);
    cmcx::StationaryPolicy policy;
    policy.choice.assign(static_cast<std::size_t>(n), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cmcx::evaluate_policy(env, policy, task));
    }
}

void bm_policy_iteration(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const cmcx::Cmc env = cmcx::build_embedded(n);
    const cmcx::DiscountedTask task = cmcx::DiscountedTask::from_cmc(env, 0.99);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cmcx::policy_iteration(env, task));
    }
}

void bm_value_iteration(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const cmcx::Cmc env = cmcx::build_embedded(n);
    const cmcx::DiscountedTask task = cmcx::DiscountedTask::from_cmc(env, 0.99);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            cmcx::value_iteration_oracle(env, task, 1e-6));
    }
}

}  // namespace

BENCHMARK(bm_evaluate_policy)->Arg(10)->Arg(50)->Arg(100);
BENCHMARK(bm_policy_iteration)->Arg(10)->Arg(50)->Arg(100);
BENCHMARK(bm_value_iteration)->Arg(10)->Arg(50)->Arg(100);

BENCHMARK_MAIN();
