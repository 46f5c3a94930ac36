#include <benchmark/benchmark.h>

#include "cmcx/cmc.hpp"
#include "cmcx/counts.hpp"
#include "cmcx/info.hpp"
#include "cmcx/rng.hpp"

namespace {

cmcx::CountTensor scattered_counts(int n_controls, int n_states,
                                   int fills, std::uint64_t seed) {
    cmcx::CountTensor counts(n_controls, n_states);
    cmcx::RngStream rng(seed);
    for (int f = 0; f < fills; ++f) {
        counts.add(static_cast<int>(rng.next_below(
                       static_cast<std::uint64_t>(n_controls))),
                   static_cast<int>(rng.next_below(
                       static_cast<std::uint64_t>(n_states))),
                   static_cast<int>(rng.next_below(
                       static_cast<std::uint64_t>(n_states))));
    }
    return counts;
}

void bm_posterior_row(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const cmcx::CountTensor counts = scattered_counts(2, n, 5 * n, 1);
    const cmcx::DirichletPrior prior;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cmcx::posterior_row(counts, prior, 0, 0));
    }
}

void bm_pig(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const cmcx::CountTensor counts = scattered_counts(2, n, 5 * n, 2);
    const cmcx::DirichletPrior prior;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cmcx::pig(0, 0, counts, prior));
    }
}

void bm_missing_information(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const cmcx::Cmc env = cmcx::build_embedded(n);
    const cmcx::CountTensor counts = scattered_counts(2, n, 5 * n, 3);
    const cmcx::DirichletPrior prior;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cmcx::missing_information(env, counts, prior));
    }
}

}  // namespace

BENCHMARK(bm_posterior_row)->Arg(10)->Arg(100);
BENCHMARK(bm_pig)->Arg(10)->Arg(100)->Arg(1000);
BENCHMARK(bm_missing_information)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
