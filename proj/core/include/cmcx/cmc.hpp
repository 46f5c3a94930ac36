#pragma once

#include <span>
#include <vector>

#include "cmcx/rng.hpp"

namespace cmcx {

/**
 * A controllable Markov chain: a finite state set, a finite control set
 * (identical at every state), a transition tensor p[u][i][j], and optional
 * per-(state, control) stage costs g(i, u).
 *
 * States and controls are 0-based everywhere in this library (files, logs,
 * CLI). Immutable after construction; safe to share across threads.
 */
class Cmc {
public:
    Cmc(int n_states, int n_controls);

    int n_states() const noexcept { return n_states_; }
    int n_controls() const noexcept { return n_controls_; }

    double probability(int u, int i, int j) const;
    std::span<const double> row(int u, int i) const;
    void set_probability(int u, int i, int j, double p);

    double cost(int i, int u) const;
    void set_cost(int i, int u, double g);
    bool has_costs() const noexcept;

    /// True when every transition probability is exactly 0 or 1.
    bool is_deterministic() const noexcept;

    /**
     * Black-box step: draw the successor of (i, u) from p[u][i][.].
     * This is the only interface a learner may use; the probabilities
     * themselves stay hidden behind it.
     */
    int sample_transition(int i, int u, RngStream& rng) const;

    void check_index(int u, int i) const;

private:
    int n_states_;
    int n_controls_;
    std::vector<double> transitions_;  // (u, i, j), row-major
    std::vector<double> costs_;        // (i, u)
};

/// Throws NonStochasticRow / NegativeProbability if `cmc` violates the
/// row-stochasticity invariants (rows sum to 1 within 1e-12, entries in
/// [0, 1]).
void validate(const Cmc& cmc);

/**
 * Two states, two controls. Control 0 keeps state 0 with probability `p`
 * and moves to state 1 otherwise; state 1 is absorbing. Control 1
 * self-loops in both states. For p < 1 state 0 is transient under
 * control 0, which is what makes this chain hard to estimate without
 * planning. All costs zero.
 */
Cmc build_two_state(double p);

/**
 * The two-state chain with p = 0 embedded in a larger state space:
 * states 0 and 1 behave exactly as in build_two_state(0), every other
 * state is absorbing under every control. Costs: g(0,0) = 2 (leave the
 * transient state), g(0,1) = 1 (stay), zero elsewhere. Requires n >= 2.
 */
Cmc build_embedded(int n);

/**
 * A deterministic 3-state / 3-control chain in which seeing all three
 * states requires ordered control choices. This construction is this
 * library's own design (a stand-in benchmark); the arcs are:
 *
 *   control 0:  0 -> 2,  1 -> 1,  2 -> 2
 *   control 1:  identity (every state self-loops)
 *   control 2:  0 -> 1,  1 -> 2,  2 -> 2
 *
 * From state 0, picking control 0 first lands in the absorbing state 2
 * and forecloses state 1 forever; reaching all states needs control 2
 * before control 0. Greedy one-step exploration falls into the trap,
 * lookahead planning does not. All costs zero.
 */
Cmc build_sequential3();

}  // namespace cmcx
