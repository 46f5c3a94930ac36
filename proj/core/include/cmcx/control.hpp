#pragma once

#include <utility>
#include <vector>

#include "cmcx/cmc.hpp"
#include "cmcx/counts.hpp"
#include "cmcx/info.hpp"

namespace cmcx {

/// Deterministic stationary policy: choice[i] is the control played in
/// state i.
struct StationaryPolicy {
    std::vector<int> choice;

    bool operator==(const StationaryPolicy&) const = default;
};

/// Expected discounted cost per start state.
struct ValueFunction {
    std::vector<double> values;
};

/**
 * The downstream planning objective: stage costs g(i, u) plus a discount
 * factor in [0, 1). Transition models are supplied separately so the same
 * task can be solved on the true chain and on any estimate of it.
 */
class DiscountedTask {
public:
    DiscountedTask(int n_states, int n_controls, double discount);

    /// Copies the stage costs stored on `model`.
    static DiscountedTask from_cmc(const Cmc& model, double discount);

    int n_states() const noexcept { return n_states_; }
    int n_controls() const noexcept { return n_controls_; }
    double discount() const noexcept { return discount_; }

    double cost(int i, int u) const;
    void set_cost(int i, int u, double g);

private:
    int n_states_;
    int n_controls_;
    double discount_;
    std::vector<double> costs_;  // i * n_controls + u
};

/**
 * Solves (I − discount·P_mu) J = g_mu for the policy's discounted cost by
 * Gaussian elimination with partial pivoting, then verifies the residual
 * ‖(I − discount·P_mu)J − g_mu‖_∞ < 1e-9. For discount < 1 and a
 * stochastic model the system is always regular, so SingularSystem
 * indicates a malformed model.
 */
ValueFunction evaluate_policy(const Cmc& model, const StationaryPolicy& policy,
                              const DiscountedTask& task);

/// One improvement sweep: per state, argmin_u of
/// g(i,u) + discount·Σ_j p[u][i][j]·J(j); ties to the lowest control index.
StationaryPolicy improve_policy(const Cmc& model, const ValueFunction& value,
                                const DiscountedTask& task);

/// Alternates evaluation and improvement from `initial` until the policy
/// stops changing. Returns the optimal policy and its value.
std::pair<StationaryPolicy, ValueFunction> policy_iteration(
    const Cmc& model, const DiscountedTask& task,
    const StationaryPolicy& initial);

/// policy_iteration starting from the all-zeros policy.
std::pair<StationaryPolicy, ValueFunction> policy_iteration(
    const Cmc& model, const DiscountedTask& task);

/**
 * Independent check on policy_iteration: iterates the Bellman operator
 * (T J)(i) = min_u [g(i,u) + discount·Σ_j p[u][i][j] J(j)] from zero until
 * the sup-norm change drops below tolerance·(1−discount)/(2·discount),
 * which bounds the distance to the fixed point by `tolerance`.
 */
ValueFunction value_iteration_oracle(const Cmc& model,
                                     const DiscountedTask& task,
                                     double tolerance);

/**
 * The model-comparison pipeline: estimate the chain from counts, find the
 * estimate's optimal policy by policy iteration, then price that policy
 * under the TRUE chain. A policy learned from a bad estimate can look
 * cheap on the estimate and expensive here — that gap is the point of the
 * measurement.
 */
std::pair<StationaryPolicy, ValueFunction> evaluate_learned_model(
    const Cmc& true_cmc, const CountTensor& counts, const DirichletPrior& prior,
    const DiscountedTask& task);

}  // namespace cmcx
