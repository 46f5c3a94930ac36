#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cmcx {

/// Symmetric Dirichlet pseudo-count added to every outcome of every row.
/// The default 0.05 expresses near-total prior ignorance.
class DirichletPrior {
public:
    explicit DirichletPrior(double alpha = 0.05);

    double alpha() const noexcept { return alpha_; }

private:
    double alpha_;
};

/**
 * Transition counts F, indexed (u, i, j): the number of observed moves
 * from state i to state j under control u. This tensor is the learner's
 * entire knowledge state.
 *
 * Plain value type: copying gives an independent tensor, which is what
 * hypothetical one-count updates during planning rely on.
 */
class CountTensor {
public:
    CountTensor(int n_controls, int n_states);

    int n_states() const noexcept { return n_states_; }
    int n_controls() const noexcept { return n_controls_; }

    std::int64_t at(int u, int i, int j) const;
    std::span<const std::int64_t> row(int u, int i) const;

    /// Record one observed transition in place.
    void add(int u, int i, int j);

    /// A copy of this tensor with one extra count at (u, i, j); *this is
    /// left untouched.
    CountTensor incremented(int u, int i, int j) const;

    std::int64_t total() const noexcept;

    bool operator==(const CountTensor&) const = default;

private:
    void check(int u, int i, int j) const;

    int n_states_;
    int n_controls_;
    std::vector<std::int64_t> counts_;
};

}  // namespace cmcx
