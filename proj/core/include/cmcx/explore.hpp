#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cmcx/cmc.hpp"
#include "cmcx/counts.hpp"
#include "cmcx/rng.hpp"

namespace cmcx {

/// Monte Carlo settings for the rollout planner. nesting_depth 1 uses the
/// one-step greedy policy as the base; depth 2 uses the depth-1 rollout
/// policy itself as the base (one further improvement step).
struct RolloutParams {
    int mc_repeats = 16;
    int nesting_depth = 1;
};

/// Which exploring strategy drives the loop.
struct Strategy {
    enum class Kind { random, pig_greedy, jpig_greedy, pig_rollout };

    Kind kind = Kind::random;
    RolloutParams rollout;  // used by pig_rollout only

    std::string name() const;

    /// Parses "random", "pig-greedy", "jpig-greedy" or "pig-rollout".
    /// Throws ConfigError on anything else.
    static Strategy parse(const std::string& token);
};

/// One period of an exploration run. All information metrics are measured
/// on the counts as they stood when the control was chosen, i.e. before
/// this period's transition was recorded.
struct StepRecord {
    int period = 0;
    int state = 0;
    int control = 0;
    int next_state = 0;
    double pig_collected = 0.0;
    double mi_total = 0.0;
    double mi_subset = 0.0;
};

struct ExplorationLog {
    std::vector<StepRecord> records;
    std::uint64_t seed = 0;
    std::string strategy;
    int horizon = 0;
};

/// Uniform draw from the control set.
int random_control(int n_controls, RngStream& rng);

/// argmax_u PIG(i, u, F); ties go to the lowest control index.
int pig_greedy_control(int i, const CountTensor& counts, const DirichletPrior& prior);

/// Joint argmax over all (state, control) pairs; ties break
/// lexicographically (lowest state, then lowest control). The chosen state
/// replaces the environment state: the agent teleports.
std::pair<int, int> jpig_greedy_pair(const CountTensor& counts,
                                     const DirichletPrior& prior);

/**
 * Value of running the greedy base policy from `start` at period k until
 * the horizon: simulate on the black box, collect PIG at every step, and
 * fold each sampled transition into a private copy of the counts. k == N
 * returns 0. The stream is consumed by value; callers fork children.
 */
double base_policy_value(int start, const CountTensor& counts, int k, int N,
                         const Cmc& env, const DirichletPrior& prior,
                         RngStream rng);

/**
 * One-step lookahead control choice. For each control u the planner
 * estimates
 *
 *     PIG(i, u, F) + E_j[ value of the base policy from (j, F + e_uij) ]
 *
 * with the expectation taken as a Monte Carlo average over
 * `params.mc_repeats` black-box samples, each on its own child stream.
 * With nesting_depth == 2 the base policy is the depth-1 rollout policy.
 *
 * Ties break in favor of the base policy's own choice at (i, F, k), then
 * the lowest index; on deterministic chains this makes the resulting
 * policy collect at least as much PIG as the base policy. Planning never
 * touches the caller's counts. Throws HorizonExceeded when k >= N.
 */
int rollout_control(int i, const CountTensor& counts, int k, int N,
                    const Cmc& env, const DirichletPrior& prior,
                    const RolloutParams& params, RngStream& rng);

/**
 * Exact finite-horizon optimum of cumulative PIG by full tree expansion:
 *
 *     J_k(i, F) = max_u [ PIG(i, u, F) + sum_j p[u][i][j] * J_{k+1}(j, F + e_uij) ]
 *
 * Reads the true transition probabilities, so this is a test oracle, not a
 * learner. Returns (value, maximizing control at the root); the control is
 * -1 when k == N. Throws IntractableHorizon when
 * (n_states * n_controls)^(N-k) exceeds 1e7.
 */
std::pair<double, int> exact_dp(int i, const CountTensor& counts, int k, int N,
                                const Cmc& env, const DirichletPrior& prior);

/**
 * Run one exploration episode of N periods and return the complete log.
 *
 * Each period: the strategy picks (i, u) — JPIG picks both jointly, the
 * others act from the current state — then PIG and missing information are
 * recorded, a successor is sampled from the black box, and the count
 * tensor is updated. JPIG ignores the sampled successor when placing the
 * agent; every other strategy moves to it.
 *
 * `metric_subset` restricts the logged mi_subset column; empty means the
 * full state set (mi_subset == mi_total).
 */
ExplorationLog explore(const Strategy& strategy, const Cmc& env, int start,
                       int N, const DirichletPrior& prior, std::uint64_t seed,
                       std::span<const int> metric_subset = {});

}  // namespace cmcx
