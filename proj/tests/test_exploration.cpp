#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "cmcx/cmc.hpp"
#include "cmcx/counts.hpp"
#include "cmcx/errors.hpp"
#include "cmcx/explore.hpp"
#include "cmcx/info.hpp"
#include "cmcx/rng.hpp"

using namespace cmcx;

namespace {

// Totals are associated back-to-front, matching the recursion in exact_dp,
// so comparisons against the oracle are exact on deterministic chains.
double total_pig(const ExplorationLog& log) {
    double total = 0.0;
    for (auto it = log.records.rbegin(); it != log.records.rend(); ++it) {
        total = it->pig_collected + total;
    }
    return total;
}

Strategy make(Strategy::Kind kind, int mc = 1, int nesting = 1) {
    Strategy s;
    s.kind = kind;
    s.rollout.mc_repeats = mc;
    s.rollout.nesting_depth = nesting;
    return s;
}

}  // namespace

TEST_CASE("strategy names round-trip and bad tokens are rejected") {
    for (const char* token :
         {"random", "pig-greedy", "jpig-greedy", "pig-rollout"}) {
        CHECK(Strategy::parse(token).name() == token);
    }
    CHECK_THROWS_AS(Strategy::parse("greedy"), ConfigError);
    CHECK_THROWS_AS(Strategy::parse(""), ConfigError);
}

TEST_CASE("random control is uniform, bounded, and seed-reproducible") {
    RngStream rng(5);
    CHECK(random_control(1, rng) == 0);

    int ones = 0;
    const int draws = 10000;
    for (int k = 0; k < draws; ++k) {
        const int u = random_control(2, rng);
        CHECK(u >= 0);
        CHECK(u < 2);
        ones += u;
    }
    const double freq = static_cast<double>(ones) / draws;
    CHECK(freq > 0.48);
    CHECK(freq < 0.52);

    RngStream a(77);
    RngStream b(77);
    for (int k = 0; k < 100; ++k) {
        CHECK(random_control(5, a) == random_control(5, b));
    }
    CHECK_THROWS_AS(random_control(0, rng), IndexOutOfRange);
}

TEST_CASE("greedy control: ties to lowest index, starved rows win") {
    const DirichletPrior prior;
    CountTensor zero(2, 2);
    CHECK(pig_greedy_control(0, zero, prior) == 0);
    CHECK(pig_greedy_control(0, CountTensor(1, 3), prior) == 0);

    CountTensor lopsided(2, 2);
    for (int k = 0; k < 1000; ++k) {
        lopsided.add(0, 0, 1);
    }
    CHECK(pig_greedy_control(0, lopsided, prior) == 1);
}

TEST_CASE("joint greedy: lexicographic ties and starved-row selection") {
    const DirichletPrior prior;
    const CountTensor zero(2, 2);
    CHECK(jpig_greedy_pair(zero, prior) == std::pair<int, int>{0, 0});

    // sample every row except (i=1, u=0) heavily -> that row wins
    CountTensor f(2, 2);
    for (int k = 0; k < 50; ++k) {
        f.add(0, 0, 1);
        f.add(1, 0, 0);
        f.add(1, 1, 1);
    }
    CHECK(jpig_greedy_pair(f, prior) == std::pair<int, int>{1, 0});
}

TEST_CASE("joint greedy covers all four rows of a 2x2 chain in four periods") {
    const Cmc env = build_two_state(0.0);
    const ExplorationLog log =
        explore(make(Strategy::Kind::jpig_greedy), env, 0, 4, DirichletPrior(), 7);
    std::set<std::pair<int, int>> pairs;
    for (const StepRecord& rec : log.records) {
        pairs.insert({rec.state, rec.control});
    }
    CHECK(pairs.size() == 4);
    CHECK(log.records[0].state == 0);
    CHECK(log.records[0].control == 0);
    CHECK(log.records[1].state == 0);
    CHECK(log.records[1].control == 1);
}

TEST_CASE("base policy value: empty horizon, frozen one-step value") {
    const DirichletPrior prior;
    const Cmc env = build_two_state(0.0);
    const CountTensor zero(2, 2);
    CHECK(base_policy_value(0, zero, 5, 5, env, prior, RngStream(1)) == 0.0);
    CHECK(base_policy_value(0, zero, 0, 1, env, prior, RngStream(1)) ==
          doctest::Approx(0.5082397813921694).epsilon(1e-12));

    // deterministic chain: the value cannot depend on the stream
    const double a = base_policy_value(0, zero, 0, 10, env, prior, RngStream(1));
    const double b = base_policy_value(0, zero, 0, 10, env, prior, RngStream(999));
    CHECK(a == b);
}

TEST_CASE("rollout control: guards") {
    const DirichletPrior prior;
    const Cmc env = build_two_state(0.0);
    const CountTensor zero(2, 2);
    RngStream rng(7);

    RolloutParams params;
    CHECK_THROWS_AS(rollout_control(0, zero, 5, 5, env, prior, params, rng),
                    HorizonExceeded);
    RolloutParams bad_nesting{1, 3};
    CHECK_THROWS_AS(rollout_control(0, zero, 0, 5, env, prior, bad_nesting, rng),
                    ConfigError);
    RolloutParams bad_mc{0, 1};
    CHECK_THROWS_AS(rollout_control(0, zero, 0, 5, env, prior, bad_mc, rng),
                    ConfigError);
}

TEST_CASE("rollout control: last period defers to the base policy") {
    const DirichletPrior prior;
    const Cmc env = build_two_state(0.0);
    RngStream rng(7);
    RolloutParams params{4, 1};

    CountTensor f(2, 2);
    for (int k = 0; k < 3; ++k) {
        f.add(0, 0, 1);  // depress control 0's gain
    }
    CHECK(pig_greedy_control(0, f, prior) == 1);
    CHECK(rollout_control(0, f, 9, 10, env, prior, params, rng) == 1);
    CHECK(rollout_control(0, CountTensor(2, 2), 9, 10, env, prior, params, rng) ==
          pig_greedy_control(0, CountTensor(2, 2), prior));
}

TEST_CASE("rollout control: plans ahead on the transient chain") {
    const DirichletPrior prior;
    const Cmc env = build_two_state(0.0);
    const CountTensor zero(2, 2);
    RngStream rng(7);
    RolloutParams params{1, 1};

    // Holding the chain in the transient state preserves future options:
    // the lookahead picks the stay control although both gains tie now.
    CHECK(rollout_control(0, zero, 0, 20, env, prior, params, rng) == 1);

    // deterministic chain: choice independent of the stream state
    RngStream other(123456);
    CHECK(rollout_control(0, zero, 0, 20, env, prior, params, other) == 1);
}

TEST_CASE("rollout planning never mutates the learner's counts") {
    const DirichletPrior prior;
    const Cmc env = build_two_state(0.3);
    CountTensor f(2, 2);
    f.add(0, 0, 0);
    f.add(1, 1, 1);
    const CountTensor snapshot = f;
    RngStream rng(11);
    RolloutParams params{8, 2};
    rollout_control(0, f, 2, 12, env, prior, params, rng);
    CHECK(f == snapshot);
}

TEST_CASE("exact dp: terminal case, one-step reduction, tractability guard") {
    const DirichletPrior prior;
    const Cmc env = build_two_state(0.0);
    const CountTensor zero(2, 2);

    const auto terminal = exact_dp(0, zero, 3, 3, env, prior);
    CHECK(terminal.first == 0.0);
    CHECK(terminal.second == -1);

    CountTensor f(2, 2);
    f.add(0, 0, 1);
    const auto one_step = exact_dp(0, f, 4, 5, env, prior);
    const double best_gain = std::max(pig(0, 0, f, prior), pig(0, 1, f, prior));
    CHECK(one_step.first == best_gain);
    CHECK(one_step.second == pig_greedy_control(0, f, prior));

    const Cmc big = build_embedded(100);
    const CountTensor zero_big(2, 100);
    CHECK_THROWS_AS(exact_dp(0, zero_big, 0, 5, big, prior),
                    IntractableHorizon);
}

TEST_CASE("exact dp dominates every simulated strategy on the deterministic chain") {
    const DirichletPrior prior;
    const Cmc env = build_two_state(0.0);
    for (const int N : {2, 3, 4}) {
        const auto [dp_value, dp_control] =
            exact_dp(0, CountTensor(2, 2), 0, N, env, prior);
        CHECK(dp_control >= 0);

        for (const Strategy& strategy :
             {make(Strategy::Kind::pig_greedy), make(Strategy::Kind::pig_rollout),
              make(Strategy::Kind::jpig_greedy)}) {
            const ExplorationLog log = explore(strategy, env, 0, N, prior, 7);
            CHECK(dp_value >= total_pig(log));
        }
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const ExplorationLog log =
                explore(make(Strategy::Kind::random), env, 0, N, prior, seed);
            CHECK(dp_value >= total_pig(log));
        }
    }
}

TEST_CASE("exploration loop: guards and log shape") {
    const DirichletPrior prior;
    const Cmc env = build_two_state(0.0);
    CHECK_THROWS_AS(explore(make(Strategy::Kind::random), env, 0, 0, prior, 7),
                    ConfigError);
    CHECK_THROWS_AS(explore(make(Strategy::Kind::random), env, 9, 5, prior, 7),
                    IndexOutOfRange);
    const std::vector<int> bad_subset{0, 7};
    CHECK_THROWS_AS(
        explore(make(Strategy::Kind::random), env, 0, 5, prior, 7, bad_subset),
        IndexOutOfRange);

    const ExplorationLog log =
        explore(make(Strategy::Kind::random), env, 0, 12, prior, 99);
    CHECK(log.records.size() == 12);
    CHECK(log.seed == 99);
    CHECK(log.horizon == 12);
    CHECK(log.strategy == "random");
    for (int k = 0; k < 12; ++k) {
        CHECK(log.records[static_cast<std::size_t>(k)].period == k);
    }
    // non-teleporting strategies satisfy the chain rule
    for (std::size_t k = 0; k + 1 < log.records.size(); ++k) {
        CHECK(log.records[k + 1].state == log.records[k].next_state);
    }
}

TEST_CASE("greedy escapes the transient state immediately") {
    const DirichletPrior prior;
    const Cmc env = build_two_state(0.0);
    const ExplorationLog log =
        explore(make(Strategy::Kind::pig_greedy), env, 0, 20, prior, 7);
    CHECK(log.records[0].state == 0);
    CHECK(log.records[0].control == 0);
    CHECK(log.records[0].next_state == 1);
    for (std::size_t k = 1; k < log.records.size(); ++k) {
        CHECK(log.records[k].state == 1);
    }
}

TEST_CASE("rollout holds the transient state for six periods") {
    const DirichletPrior prior;
    const Cmc env = build_two_state(0.0);
    const ExplorationLog log =
        explore(make(Strategy::Kind::pig_rollout), env, 0, 20, prior, 7);
    for (int k = 0; k < 6; ++k) {
        CHECK(log.records[static_cast<std::size_t>(k)].state == 0);
        CHECK(log.records[static_cast<std::size_t>(k)].control == 1);
    }
    CHECK(log.records[6].state == 0);
    CHECK(log.records[6].control == 0);
    CHECK(log.records[6].next_state == 1);

    // final restricted missing information beats greedy's
    const ExplorationLog greedy =
        explore(make(Strategy::Kind::pig_greedy), env, 0, 20, prior, 7);
    CHECK(log.records.back().mi_total < greedy.records.back().mi_total);
}

TEST_CASE("deterministic-chain runs are seed-independent for planners") {
    const DirichletPrior prior;
    const Cmc env = build_two_state(0.0);
    for (const Strategy& strategy :
         {make(Strategy::Kind::pig_greedy), make(Strategy::Kind::pig_rollout)}) {
        const ExplorationLog a = explore(strategy, env, 0, 15, prior, 1);
        const ExplorationLog b = explore(strategy, env, 0, 15, prior, 31337);
        REQUIRE(a.records.size() == b.records.size());
        for (std::size_t k = 0; k < a.records.size(); ++k) {
            CHECK(a.records[k].state == b.records[k].state);
            CHECK(a.records[k].control == b.records[k].control);
            CHECK(a.records[k].next_state == b.records[k].next_state);
            CHECK(a.records[k].pig_collected == b.records[k].pig_collected);
        }
    }
}

TEST_CASE("random runs replay exactly under the same seed") {
    const DirichletPrior prior;
    const Cmc env = build_two_state(0.4);
    const ExplorationLog a = explore(make(Strategy::Kind::random), env, 0, 30, prior, 5);
    const ExplorationLog b = explore(make(Strategy::Kind::random), env, 0, 30, prior, 5);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
        CHECK(a.records[k].control == b.records[k].control);
        CHECK(a.records[k].next_state == b.records[k].next_state);
        CHECK(a.records[k].mi_total == b.records[k].mi_total);
    }
}

TEST_CASE("teleporting strategy may break the chain rule but keeps counting") {
    const DirichletPrior prior;
    const Cmc env = build_two_state(0.0);
    const ExplorationLog log =
        explore(make(Strategy::Kind::jpig_greedy), env, 0, 6, prior, 7);
    // period 0 samples the escape; period 1 teleports back to state 0
    CHECK(log.records[0].next_state == 1);
    CHECK(log.records[1].state == 0);
    // one environment sample per period regardless
    CHECK(log.records.size() == 6);
}

TEST_CASE("subset metric column: restricted when given, total otherwise") {
    const DirichletPrior prior;
    const Cmc env = build_embedded(10);
    const std::vector<int> subset{0, 1};
    const ExplorationLog with =
        explore(make(Strategy::Kind::pig_greedy), env, 0, 8, prior, 7, subset);
    const ExplorationLog without =
        explore(make(Strategy::Kind::pig_greedy), env, 0, 8, prior, 7);
    for (std::size_t k = 0; k < with.records.size(); ++k) {
        CHECK(with.records[k].mi_subset < with.records[k].mi_total);
        CHECK(without.records[k].mi_subset == without.records[k].mi_total);
        CHECK(with.records[k].mi_total == without.records[k].mi_total);
    }
}

TEST_CASE("sequential chain separates greedy from rollout") {
    const DirichletPrior prior;
    const Cmc env = build_sequential3();

    const auto distinct_states = [](const ExplorationLog& log) {
        std::set<int> states;
        for (const StepRecord& rec : log.records) {
            states.insert(rec.state);
        }
        return states;
    };

    const ExplorationLog greedy =
        explore(make(Strategy::Kind::pig_greedy), env, 0, 20, prior, 7);
    CHECK(distinct_states(greedy).size() == 2);

    const ExplorationLog depth1 =
        explore(make(Strategy::Kind::pig_rollout, 1, 1), env, 0, 20, prior, 7);
    CHECK(distinct_states(depth1) == std::set<int>{0, 1, 2});

    const ExplorationLog depth2 =
        explore(make(Strategy::Kind::pig_rollout, 1, 2), env, 0, 20, prior, 7);
    CHECK(distinct_states(depth2) == std::set<int>{0, 1, 2});
}
