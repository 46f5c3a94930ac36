#include "cmcx/explore.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cmcx/errors.hpp"
#include "cmcx/info.hpp"

namespace cmcx {

namespace {

// Child-stream key for the base policy's own root choice inside a nested
// rollout. Keys 0 .. n_controls*mc_repeats-1 belong to the Monte Carlo
// repeats, so any large constant is collision-free.
constexpr std::uint64_t kBaseChoiceKey = ~0ull;

void check_shapes(const Cmc& env, const CountTensor& counts, const char* what) {
    if (counts.n_states() != env.n_states() ||
        counts.n_controls() != env.n_controls()) {
        throw ShapeMismatch(std::string(what) + ": count tensor is " +
                            std::to_string(counts.n_controls()) + "x" +
                            std::to_string(counts.n_states()) + "x" +
                            std::to_string(counts.n_states()) +
                            " but the chain has " +
                            std::to_string(env.n_states()) + " states and " +
                            std::to_string(env.n_controls()) + " controls");
    }
}

/**
 * Simulated total PIG of a fixed policy run from (start, f) at period k to
 * the horizon. depth == 0 plays PIG greedy; depth >= 1 plays the
 * depth-`depth` rollout policy. The counts and the stream are private to
 * this simulation.
 */
double simulate_policy_value(int start, CountTensor f, int k, int N,
                             const Cmc& env, const DirichletPrior& prior,
                             int depth, int mc_repeats, RngStream rng) {
    double total = 0.0;
    int state = start;
    for (int t = k; t < N; ++t) {
        int u = 0;
        if (depth == 0) {
            u = pig_greedy_control(state, f, prior);
        } else {
            RolloutParams inner{mc_repeats, depth};
            u = rollout_control(state, f, t, N, env, prior, inner, rng);
        }
        total += pig(state, u, f, prior);
        if (t + 1 == N) {
            break;  // the final successor can never be acted on
        }
        const int j = env.sample_transition(state, u, rng);
        f.add(u, state, j);
        state = j;
    }
    return total;
}

}  // namespace

std::string Strategy::name() const {
    switch (kind) {
        case Kind::random: return "random";
        case Kind::pig_greedy: return "pig-greedy";
        case Kind::jpig_greedy: return "jpig-greedy";
        case Kind::pig_rollout: return "pig-rollout";
    }
    throw ConfigError("unknown strategy kind");
}

Strategy Strategy::parse(const std::string& token) {
    Strategy s;
    if (token == "random") {
        s.kind = Kind::random;
    } else if (token == "pig-greedy") {
        s.kind = Kind::pig_greedy;
    } else if (token == "jpig-greedy") {
        s.kind = Kind::jpig_greedy;
    } else if (token == "pig-rollout") {
        s.kind = Kind::pig_rollout;
    } else {
        throw ConfigError("unknown strategy \"" + token +
                          "\" (expected random, pig-greedy, jpig-greedy or "
                          "pig-rollout)");
    }
    return s;
}

int random_control(int n_controls, RngStream& rng) {
    if (n_controls < 1) {
        throw IndexOutOfRange("random_control: n_controls must be positive, got " +
                              std::to_string(n_controls));
    }
    return static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n_controls)));
}

int pig_greedy_control(int i, const CountTensor& counts,
                       const DirichletPrior& prior) {
    int best_u = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int u = 0; u < counts.n_controls(); ++u) {
        const double gain = pig(i, u, counts, prior);
        if (gain > best) {
            best = gain;
            best_u = u;
        }
    }
    return best_u;
}

std::pair<int, int> jpig_greedy_pair(const CountTensor& counts,
                                     const DirichletPrior& prior) {
    int best_i = 0;
    int best_u = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < counts.n_states(); ++i) {
        for (int u = 0; u < counts.n_controls(); ++u) {
            const double gain = pig(i, u, counts, prior);
            if (gain > best) {
                best = gain;
                best_i = i;
                best_u = u;
            }
        }
    }
    return {best_i, best_u};
}

double base_policy_value(int start, const CountTensor& counts, int k, int N,
                         const Cmc& env, const DirichletPrior& prior,
                         RngStream rng) {
    check_shapes(env, counts, "base_policy_value");
    env.check_index(0, start);
    return simulate_policy_value(start, counts, k, N, env, prior, /*depth=*/0,
                                 /*mc_repeats=*/1, std::move(rng));
}

int rollout_control(int i, const CountTensor& counts, int k, int N,
                    const Cmc& env, const DirichletPrior& prior,
                    const RolloutParams& params, RngStream& rng) {
    if (k >= N) {
        throw HorizonExceeded("rollout_control: period " + std::to_string(k) +
                              " is not before the horizon " + std::to_string(N));
    }
    if (params.nesting_depth != 1 && params.nesting_depth != 2) {
        throw ConfigError("rollout nesting_depth must be 1 or 2, got " +
                          std::to_string(params.nesting_depth));
    }
    if (params.mc_repeats < 1) {
        throw ConfigError("rollout mc_repeats must be >= 1, got " +
                          std::to_string(params.mc_repeats));
    }
    check_shapes(env, counts, "rollout_control");
    env.check_index(0, i);

    const int n_controls = env.n_controls();
    const int inner_depth = params.nesting_depth - 1;
    // One draw keys the whole planning session; every simulated future runs
    // on its own child stream, so repeats are order-independent and the
    // caller's stream advances by exactly one draw per decision.
    const RngStream parent(rng.next_u64());

    int base_u = 0;
    if (inner_depth == 0) {
        base_u = pig_greedy_control(i, counts, prior);
    } else {
        RngStream base_rng = parent.child(kBaseChoiceKey);
        RolloutParams inner{params.mc_repeats, inner_depth};
        base_u = rollout_control(i, counts, k, N, env, prior, inner, base_rng);
    }

    std::vector<double> q(static_cast<std::size_t>(n_controls), 0.0);
    for (int u = 0; u < n_controls; ++u) {
        double value = pig(i, u, counts, prior);
        if (k + 1 < N) {
            double acc = 0.0;
            for (int r = 0; r < params.mc_repeats; ++r) {
                const std::uint64_t key =
                    static_cast<std::uint64_t>(u) *
                        static_cast<std::uint64_t>(params.mc_repeats) +
                    static_cast<std::uint64_t>(r);
                RngStream stream = parent.child(key);
                const int j = env.sample_transition(i, u, stream);
                acc += simulate_policy_value(j, counts.incremented(u, i, j),
                                             k + 1, N, env, prior, inner_depth,
                                             params.mc_repeats,
                                             std::move(stream));
            }
            value += acc / static_cast<double>(params.mc_repeats);
        }
        q[static_cast<std::size_t>(u)] = value;
    }

    int best_u = base_u;
    double best = q[static_cast<std::size_t>(base_u)];
    for (int u = 0; u < n_controls; ++u) {
        if (q[static_cast<std::size_t>(u)] > best) {
            best = q[static_cast<std::size_t>(u)];
            best_u = u;
        }
    }
    return best_u;
}

namespace {

double dp_value(int i, const CountTensor& counts, int k, int N, const Cmc& env,
                const DirichletPrior& prior, int* best_control) {
    if (k >= N) {
        if (best_control != nullptr) {
            *best_control = -1;
        }
        return 0.0;
    }
    double best = -std::numeric_limits<double>::infinity();
    int best_u = 0;
    for (int u = 0; u < env.n_controls(); ++u) {
        double value = pig(i, u, counts, prior);
        double tail = 0.0;
        for (int j = 0; j < env.n_states(); ++j) {
            const double p = env.probability(u, i, j);
            if (p > 0.0) {
                tail += p * dp_value(j, counts.incremented(u, i, j), k + 1, N,
                                     env, prior, nullptr);
            }
        }
        value += tail;
        if (value > best) {
            best = value;
            best_u = u;
        }
    }
    if (best_control != nullptr) {
        *best_control = best_u;
    }
    return best;
}

}  // namespace

std::pair<double, int> exact_dp(int i, const CountTensor& counts, int k, int N,
                                const Cmc& env, const DirichletPrior& prior) {
    check_shapes(env, counts, "exact_dp");
    env.check_index(0, i);
    if (k < N) {
        const double branching =
            static_cast<double>(env.n_states()) *
            static_cast<double>(env.n_controls());
        if (std::pow(branching, static_cast<double>(N - k)) > 1e7) {
            throw IntractableHorizon(
                "exact_dp: (" + std::to_string(env.n_states()) + " states x " +
                std::to_string(env.n_controls()) + " controls)^" +
                std::to_string(N - k) + " exceeds the 1e7 expansion budget");
        }
    }
    int best_u = -1;
    const double value = dp_value(i, counts, k, N, env, prior, &best_u);
    return {value, best_u};
}

ExplorationLog explore(const Strategy& strategy, const Cmc& env, int start,
                       int N, const DirichletPrior& prior, std::uint64_t seed,
                       std::span<const int> metric_subset) {
    if (N < 1) {
        throw ConfigError("explore: horizon must be >= 1, got " +
                          std::to_string(N));
    }
    env.check_index(0, start);
    for (const int s : metric_subset) {
        if (s < 0 || s >= env.n_states()) {
            throw IndexOutOfRange("explore: metric subset state " +
                                  std::to_string(s) + " is outside [0, " +
                                  std::to_string(env.n_states()) + ")");
        }
    }

    const RngStream root(seed);
    RngStream env_rng = root.child(0);
    RngStream strategy_rng = root.child(1);

    CountTensor counts(env.n_controls(), env.n_states());
    ExplorationLog log;
    log.seed = seed;
    log.strategy = strategy.name();
    log.horizon = N;
    log.records.reserve(static_cast<std::size_t>(N));

    int state = start;
    for (int k = 0; k < N; ++k) {
        int act_state = state;
        int u = 0;
        switch (strategy.kind) {
            case Strategy::Kind::random:
                u = random_control(env.n_controls(), strategy_rng);
                break;
            case Strategy::Kind::pig_greedy:
                u = pig_greedy_control(state, counts, prior);
                break;
            case Strategy::Kind::jpig_greedy: {
                const auto [ji, ju] = jpig_greedy_pair(counts, prior);
                act_state = ji;  // the agent teleports to the joint argmax
                u = ju;
                break;
            }
            case Strategy::Kind::pig_rollout:
                u = rollout_control(state, counts, k, N, env, prior,
                                    strategy.rollout, strategy_rng);
                break;
        }

        StepRecord rec;
        rec.period = k;
        rec.state = act_state;
        rec.control = u;
        rec.pig_collected = pig(act_state, u, counts, prior);
        rec.mi_total = missing_information(env, counts, prior);
        rec.mi_subset = metric_subset.empty()
                            ? rec.mi_total
                            : missing_information(env, counts, prior,
                                                  metric_subset);

        const int j = env.sample_transition(act_state, u, env_rng);
        rec.next_state = j;
        counts.add(u, act_state, j);
        log.records.push_back(rec);
        state = j;
    }
    return log;
}

}  // namespace cmcx
