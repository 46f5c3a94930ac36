#include "cmcx/counts.hpp"

#include <numeric>
#include <string>

#include "cmcx/errors.hpp"

namespace cmcx {

DirichletPrior::DirichletPrior(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0))
        throw InvalidPrior("Dirichlet alpha must be > 0, got " + std::to_string(alpha));
}

CountTensor::CountTensor(int n_controls, int n_states)
    : n_states_(n_states), n_controls_(n_controls) {
    if (n_controls < 1 || n_states < 1)
        throw InvalidStateCount(
            "count tensor needs n_controls >= 1 and n_states >= 1, got " +
            std::to_string(n_controls) + " controls, " +
            std::to_string(n_states) + " states");
    counts_.assign(static_cast<std::size_t>(n_controls) * n_states * n_states, 0);
}

void CountTensor::check(int u, int i, int j) const {
    if (u < 0 || u >= n_controls_ || i < 0 || i >= n_states_ || j < 0 || j >= n_states_)
        throw IndexOutOfRange("(u=" + std::to_string(u) + ", i=" + std::to_string(i) +
                              ", j=" + std::to_string(j) + ") out of range");
}

std::int64_t CountTensor::at(int u, int i, int j) const {
    check(u, i, j);
    return counts_[(static_cast<std::size_t>(u) * n_states_ + i) * n_states_ + j];
}

std::span<const std::int64_t> CountTensor::row(int u, int i) const {
    check(u, i, 0);
    const auto offset = (static_cast<std::size_t>(u) * n_states_ + i) * n_states_;
    return {counts_.data() + offset, static_cast<std::size_t>(n_states_)};
}

void CountTensor::add(int u, int i, int j) {
    check(u, i, j);
    ++counts_[(static_cast<std::size_t>(u) * n_states_ + i) * n_states_ + j];
}

CountTensor CountTensor::incremented(int u, int i, int j) const {
    CountTensor copy = *this;
    copy.add(u, i, j);
    return copy;
}

std::int64_t CountTensor::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

}  // namespace cmcx
