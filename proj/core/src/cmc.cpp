#include "cmcx/cmc.hpp"

#include <cmath>
#include <string>

#include "cmcx/errors.hpp"

namespace cmcx {

NonStochasticRow::NonStochasticRow(int u, int i, double sum)
    : Error("NonStochasticRow",
            "row (u=" + std::to_string(u) + ", i=" + std::to_string(i) +
                ") sums to " + std::to_string(sum) + ", expected 1"),
      control(u), state(i), row_sum(sum) {}

NegativeProbability::NegativeProbability(int u, int i, int j)
    : Error("NegativeProbability",
            "entry (u=" + std::to_string(u) + ", i=" + std::to_string(i) +
                ", j=" + std::to_string(j) + ") is negative"),
      control(u), state(i), next_state(j) {}

Cmc::Cmc(int n_states, int n_controls)
    : n_states_(n_states), n_controls_(n_controls) {
    if (n_states < 1)
        throw InvalidStateCount("n_states must be >= 1, got " +
                                std::to_string(n_states));
    if (n_controls < 1)
        throw InvalidStateCount("n_controls must be >= 1, got " +
                                std::to_string(n_controls));
    transitions_.assign(static_cast<std::size_t>(n_controls) * n_states * n_states, 0.0);
    costs_.assign(static_cast<std::size_t>(n_states) * n_controls, 0.0);
}

void Cmc::check_index(int u, int i) const {
    if (u < 0 || u >= n_controls_ || i < 0 || i >= n_states_)
        throw IndexOutOfRange("(u=" + std::to_string(u) + ", i=" +
                              std::to_string(i) + ") out of range for " +
                              std::to_string(n_controls_) + " controls, " +
                              std::to_string(n_states_) + " states");
}

double Cmc::probability(int u, int i, int j) const {
    check_index(u, i);
    if (j < 0 || j >= n_states_)
        throw IndexOutOfRange("successor j=" + std::to_string(j) + " out of range");
    return transitions_[(static_cast<std::size_t>(u) * n_states_ + i) * n_states_ + j];
}

std::span<const double> Cmc::row(int u, int i) const {
    check_index(u, i);
    const auto offset = (static_cast<std::size_t>(u) * n_states_ + i) * n_states_;
    return {transitions_.data() + offset, static_cast<std::size_t>(n_states_)};
}

void Cmc::set_probability(int u, int i, int j, double p) {
    check_index(u, i);
    if (j < 0 || j >= n_states_)
        throw IndexOutOfRange("successor j=" + std::to_string(j) + " out of range");
    transitions_[(static_cast<std::size_t>(u) * n_states_ + i) * n_states_ + j] = p;
}

double Cmc::cost(int i, int u) const {
    check_index(u, i);
    return costs_[static_cast<std::size_t>(i) * n_controls_ + u];
}

void Cmc::set_cost(int i, int u, double g) {
    check_index(u, i);
    costs_[static_cast<std::size_t>(i) * n_controls_ + u] = g;
}

bool Cmc::has_costs() const noexcept {
    for (double g : costs_)
        if (g != 0.0) return true;
    return false;
}

bool Cmc::is_deterministic() const noexcept {
    for (double p : transitions_)
        if (p != 0.0 && p != 1.0) return false;
    return true;
}

int Cmc::sample_transition(int i, int u, RngStream& rng) const {
    check_index(u, i);
    const auto r = row(u, i);
    const double x = rng.next_double();
    double acc = 0.0;
    int last_positive = 0;
    for (int j = 0; j < n_states_; ++j) {
        if (r[j] <= 0.0) continue;
        acc += r[j];
        last_positive = j;
        if (x < acc) return j;
    }
    // x landed in the rounding slack at the top of the row.
    return last_positive;
}

void validate(const Cmc& cmc) {
    for (int u = 0; u < cmc.n_controls(); ++u) {
        for (int i = 0; i < cmc.n_states(); ++i) {
            const auto row = cmc.row(u, i);
            double sum = 0.0;
            for (int j = 0; j < cmc.n_states(); ++j) {
                if (row[j] < 0.0) throw NegativeProbability(u, i, j);
                sum += row[j];
            }
            if (std::abs(sum - 1.0) > 1e-12) throw NonStochasticRow(u, i, sum);
        }
    }
}

Cmc build_two_state(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw InvalidProbability("p must lie in [0,1], got " + std::to_string(p));
    Cmc cmc(2, 2);
    cmc.set_probability(0, 0, 0, p);
    cmc.set_probability(0, 0, 1, 1.0 - p);
    cmc.set_probability(0, 1, 1, 1.0);
    cmc.set_probability(1, 0, 0, 1.0);
    cmc.set_probability(1, 1, 1, 1.0);
    return cmc;
}

Cmc build_embedded(int n) {
    if (n < 2)
        throw InvalidStateCount("embedded chain needs n >= 2, got " + std::to_string(n));
    Cmc cmc(n, 2);
    cmc.set_probability(0, 0, 1, 1.0);
    cmc.set_probability(0, 1, 1, 1.0);
    for (int i = 2; i < n; ++i) cmc.set_probability(0, i, i, 1.0);
    for (int i = 0; i < n; ++i) cmc.set_probability(1, i, i, 1.0);
    cmc.set_cost(0, 0, 2.0);
    cmc.set_cost(0, 1, 1.0);
    return cmc;
}

Cmc build_sequential3() {
    Cmc cmc(3, 3);
    cmc.set_probability(0, 0, 2, 1.0);
    cmc.set_probability(0, 1, 1, 1.0);
    cmc.set_probability(0, 2, 2, 1.0);
    for (int i = 0; i < 3; ++i) cmc.set_probability(1, i, i, 1.0);
    cmc.set_probability(2, 0, 1, 1.0);
    cmc.set_probability(2, 1, 2, 1.0);
    cmc.set_probability(2, 2, 2, 1.0);
    return cmc;
}

}  // namespace cmcx
