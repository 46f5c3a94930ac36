#include "cmcx/control.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cmcx/errors.hpp"

namespace cmcx {

DiscountedTask::DiscountedTask(int n_states, int n_controls, double discount)
    : n_states_(n_states), n_controls_(n_controls), discount_(discount),
      costs_(static_cast<std::size_t>(n_states) *
                 static_cast<std::size_t>(n_controls),
             0.0) {
    if (n_states < 1 || n_controls < 1) {
        throw InvalidStateCount("DiscountedTask needs at least one state and "
                                "one control, got " +
                                std::to_string(n_states) + " states, " +
                                std::to_string(n_controls) + " controls");
    }
    if (!(discount >= 0.0 && discount < 1.0)) {
        throw ConfigError("discount must lie in [0, 1), got " +
                          std::to_string(discount));
    }
}

DiscountedTask DiscountedTask::from_cmc(const Cmc& model, double discount) {
    DiscountedTask task(model.n_states(), model.n_controls(), discount);
    for (int i = 0; i < model.n_states(); ++i) {
        for (int u = 0; u < model.n_controls(); ++u) {
            task.set_cost(i, u, model.cost(i, u));
        }
    }
    return task;
}

double DiscountedTask::cost(int i, int u) const {
    if (i < 0 || i >= n_states_ || u < 0 || u >= n_controls_) {
        throw IndexOutOfRange("DiscountedTask::cost(" + std::to_string(i) +
                              ", " + std::to_string(u) + ") outside " +
                              std::to_string(n_states_) + " states x " +
                              std::to_string(n_controls_) + " controls");
    }
    return costs_[static_cast<std::size_t>(i) *
                      static_cast<std::size_t>(n_controls_) +
                  static_cast<std::size_t>(u)];
}

void DiscountedTask::set_cost(int i, int u, double g) {
    if (i < 0 || i >= n_states_ || u < 0 || u >= n_controls_) {
        throw IndexOutOfRange("DiscountedTask::set_cost(" + std::to_string(i) +
                              ", " + std::to_string(u) + ") outside " +
                              std::to_string(n_states_) + " states x " +
                              std::to_string(n_controls_) + " controls");
    }
    costs_[static_cast<std::size_t>(i) *
               static_cast<std::size_t>(n_controls_) +
           static_cast<std::size_t>(u)] = g;
}

namespace {

void check_task_shapes(const Cmc& model, const DiscountedTask& task,
                       const char* what) {
    if (model.n_states() != task.n_states() ||
        model.n_controls() != task.n_controls()) {
        throw ShapeMismatch(std::string(what) + ": model is " +
                            std::to_string(model.n_states()) + "x" +
                            std::to_string(model.n_controls()) +
                            " but the task is " +
                            std::to_string(task.n_states()) + "x" +
                            std::to_string(task.n_controls()));
    }
}

void check_policy(const StationaryPolicy& policy, const Cmc& model,
                  const char* what) {
    if (static_cast<int>(policy.choice.size()) != model.n_states()) {
        throw ShapeMismatch(std::string(what) + ": policy covers " +
                            std::to_string(policy.choice.size()) +
                            " states but the model has " +
                            std::to_string(model.n_states()));
    }
    for (int i = 0; i < model.n_states(); ++i) {
        const int u = policy.choice[static_cast<std::size_t>(i)];
        if (u < 0 || u >= model.n_controls()) {
            throw IndexOutOfRange(std::string(what) + ": policy plays control " +
                                  std::to_string(u) + " in state " +
                                  std::to_string(i) + ", valid range [0, " +
                                  std::to_string(model.n_controls()) + ")");
        }
    }
}

/// Dense in-place solve of A x = b with partial pivoting. A and b are
/// clobbered; the solution lands in b.
void solve_inplace(std::vector<double>& a, std::vector<double>& b, int n) {
    const auto at = [&a, n](int r, int c) -> double& {
        return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(c)];
    };
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double magnitude = std::abs(at(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double candidate = std::abs(at(r, col));
            if (candidate > magnitude) {
                magnitude = candidate;
                pivot = r;
            }
        }
        if (magnitude == 0.0) {
            throw SingularSystem("policy evaluation system is singular at "
                                 "column " + std::to_string(col));
        }
        if (pivot != col) {
            for (int c = col; c < n; ++c) {
                std::swap(at(col, c), at(pivot, c));
            }
            std::swap(b[static_cast<std::size_t>(col)],
                      b[static_cast<std::size_t>(pivot)]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double factor = at(r, col) / at(col, col);
            if (factor == 0.0) {
                continue;
            }
            at(r, col) = 0.0;
            for (int c = col + 1; c < n; ++c) {
                at(r, c) -= factor * at(col, c);
            }
            b[static_cast<std::size_t>(r)] -=
                factor * b[static_cast<std::size_t>(col)];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = b[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < n; ++c) {
            s -= at(r, c) * b[static_cast<std::size_t>(c)];
        }
        b[static_cast<std::size_t>(r)] = s / at(r, r);
    }
}

}  // namespace

ValueFunction evaluate_policy(const Cmc& model, const StationaryPolicy& policy,
                              const DiscountedTask& task) {
    check_task_shapes(model, task, "evaluate_policy");
    check_policy(policy, model, "evaluate_policy");

    const int n = model.n_states();
    const double gamma = task.discount();

    std::vector<double> matrix(static_cast<std::size_t>(n) *
                                   static_cast<std::size_t>(n),
                               0.0);
    std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const int u = policy.choice[static_cast<std::size_t>(i)];
        const auto row = model.row(u, i);
        for (int j = 0; j < n; ++j) {
            matrix[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(j)] =
                (i == j ? 1.0 : 0.0) - gamma * row[static_cast<std::size_t>(j)];
        }
        rhs[static_cast<std::size_t>(i)] = task.cost(i, u);
    }

    std::vector<double> work_matrix = matrix;
    std::vector<double> solution = rhs;
    solve_inplace(work_matrix, solution, n);

    // Residual check against the untouched system.
    double residual = 0.0;
    for (int i = 0; i < n; ++i) {
        double mj = 0.0;
        for (int j = 0; j < n; ++j) {
            mj += matrix[static_cast<std::size_t>(i) *
                             static_cast<std::size_t>(n) +
                         static_cast<std::size_t>(j)] *
                  solution[static_cast<std::size_t>(j)];
        }
        residual = std::max(residual,
                            std::abs(mj - rhs[static_cast<std::size_t>(i)]));
    }
    if (!(residual < 1e-9)) {
        throw SingularSystem("policy evaluation residual " +
                             std::to_string(residual) +
                             " exceeds the 1e-9 bound");
    }

    ValueFunction value;
    value.values = std::move(solution);
    return value;
}

StationaryPolicy improve_policy(const Cmc& model, const ValueFunction& value,
                                const DiscountedTask& task) {
    check_task_shapes(model, task, "improve_policy");
    if (static_cast<int>(value.values.size()) != model.n_states()) {
        throw ShapeMismatch("improve_policy: value covers " +
                            std::to_string(value.values.size()) +
                            " states but the model has " +
                            std::to_string(model.n_states()));
    }

    const int n = model.n_states();
    const double gamma = task.discount();
    StationaryPolicy improved;
    improved.choice.resize(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        int best_u = 0;
        double best = std::numeric_limits<double>::infinity();
        for (int u = 0; u < model.n_controls(); ++u) {
            const auto row = model.row(u, i);
            double q = task.cost(i, u);
            double tail = 0.0;
            for (int j = 0; j < n; ++j) {
                tail += row[static_cast<std::size_t>(j)] *
                        value.values[static_cast<std::size_t>(j)];
            }
            q += gamma * tail;
            if (q < best) {
                best = q;
                best_u = u;
            }
        }
        improved.choice[static_cast<std::size_t>(i)] = best_u;
    }
    return improved;
}

std::pair<StationaryPolicy, ValueFunction> policy_iteration(
    const Cmc& model, const DiscountedTask& task,
    const StationaryPolicy& initial) {
    check_task_shapes(model, task, "policy_iteration");
    check_policy(initial, model, "policy_iteration");

    // The policy space is finite and each sweep is non-increasing, so the
    // loop must terminate; the cap only catches a broken improvement step.
    const long max_iterations =
        64L * model.n_states() * model.n_controls() + 64L;

    StationaryPolicy policy = initial;
    ValueFunction value = evaluate_policy(model, policy, task);
    for (long iteration = 0; iteration < max_iterations; ++iteration) {
        StationaryPolicy improved = improve_policy(model, value, task);
        if (improved == policy) {
            return {std::move(policy), std::move(value)};
        }
        policy = std::move(improved);
        value = evaluate_policy(model, policy, task);
    }
    throw Error("InternalError",
                "policy iteration did not converge within " +
                    std::to_string(max_iterations) + " sweeps");
}

std::pair<StationaryPolicy, ValueFunction> policy_iteration(
    const Cmc& model, const DiscountedTask& task) {
    StationaryPolicy zeros;
    zeros.choice.assign(static_cast<std::size_t>(model.n_states()), 0);
    return policy_iteration(model, task, zeros);
}

ValueFunction value_iteration_oracle(const Cmc& model,
                                     const DiscountedTask& task,
                                     double tolerance) {
    check_task_shapes(model, task, "value_iteration_oracle");
    if (!(tolerance > 0.0)) {
        throw ConfigError("value iteration tolerance must be positive, got " +
                          std::to_string(tolerance));
    }

    const int n = model.n_states();
    const double gamma = task.discount();
    // For gamma near 0 a single application of the operator is already
    // within any tolerance; guard the division.
    const double stop = gamma > 0.0
                            ? tolerance * (1.0 - gamma) / (2.0 * gamma)
                            : std::numeric_limits<double>::infinity();

    ValueFunction value;
    value.values.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<double> next(static_cast<std::size_t>(n), 0.0);
    while (true) {
        double change = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (int u = 0; u < model.n_controls(); ++u) {
                const auto row = model.row(u, i);
                double tail = 0.0;
                for (int j = 0; j < n; ++j) {
                    tail += row[static_cast<std::size_t>(j)] *
                            value.values[static_cast<std::size_t>(j)];
                }
                best = std::min(best, task.cost(i, u) + gamma * tail);
            }
            next[static_cast<std::size_t>(i)] = best;
            change = std::max(change,
                              std::abs(best -
                                       value.values[static_cast<std::size_t>(i)]));
        }
        value.values.swap(next);
        if (change < stop) {
            return value;
        }
    }
}

std::pair<StationaryPolicy, ValueFunction> evaluate_learned_model(
    const Cmc& true_cmc, const CountTensor& counts, const DirichletPrior& prior,
    const DiscountedTask& task) {
    check_task_shapes(true_cmc, task, "evaluate_learned_model");
    if (counts.n_states() != true_cmc.n_states() ||
        counts.n_controls() != true_cmc.n_controls()) {
        throw ShapeMismatch("evaluate_learned_model: count tensor shape does "
                            "not match the chain");
    }

    const Cmc estimate = posterior_estimate(counts, prior);
    auto [policy, value_on_estimate] = policy_iteration(estimate, task);
    ValueFunction value_under_truth = evaluate_policy(true_cmc, policy, task);
    return {std::move(policy), std::move(value_under_truth)};
}

}  // namespace cmcx
