#include "cmcx/info.hpp"

#include <cmath>
#include <string>

#include "cmcx/errors.hpp"

namespace cmcx {

namespace {

void check_shapes(const Cmc& cmc, const CountTensor& counts) {
    if (cmc.n_states() != counts.n_states() || cmc.n_controls() != counts.n_controls())
        throw ShapeMismatch("chain is " + std::to_string(cmc.n_controls()) + "x" +
                            std::to_string(cmc.n_states()) + " states but counts are " +
                            std::to_string(counts.n_controls()) + "x" +
                            std::to_string(counts.n_states()));
}

double row_kl_term(const Cmc& true_cmc, const CountTensor& counts,
                   const DirichletPrior& prior, int i, int u) {
    const auto estimate = posterior_row(counts, prior, u, i);
    return kl_divergence(true_cmc.row(u, i), estimate);
}

}  // namespace

std::vector<double> posterior_row(const CountTensor& counts,
                                  const DirichletPrior& prior, int u, int i) {
    const auto row = counts.row(u, i);
    const int n = counts.n_states();
    const double alpha = prior.alpha();
    double denom = static_cast<double>(n) * alpha;
    for (auto c : row) denom += static_cast<double>(c);

    std::vector<double> p(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        p[static_cast<std::size_t>(j)] = (static_cast<double>(row[j]) + alpha) / denom;
    return p;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size())
        throw LengthMismatch("KL arguments have lengths " + std::to_string(p.size()) +
                             " and " + std::to_string(q.size()));
    double total = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] == 0.0) continue;  // 0 * ln(0/q) = 0
        if (q[j] == 0.0)
            throw UnsupportedSupport("p[" + std::to_string(j) +
                                     "] > 0 but q[" + std::to_string(j) + "] == 0");
        total += p[j] * std::log(p[j] / q[j]);
    }
    return total;
}

double pig(int i, int u, const CountTensor& counts, const DirichletPrior& prior) {
    const auto row = counts.row(u, i);
    const int n = counts.n_states();
    const double alpha = prior.alpha();
    double denom = static_cast<double>(n) * alpha;
    for (auto c : row) denom += static_cast<double>(c);
    const double denom_after = denom + 1.0;

    // Only row (u, i) changes under the hypothetical update, so the whole
    // computation stays local to that row: O(n_states^2).
    double total = 0.0;
    for (int js = 0; js < n; ++js) {
        const double weight = (static_cast<double>(row[js]) + alpha) / denom;
        double kl = 0.0;
        for (int j = 0; j < n; ++j) {
            const double extra = (j == js) ? 1.0 : 0.0;
            const double after = (static_cast<double>(row[j]) + alpha + extra) / denom_after;
            const double before = (static_cast<double>(row[j]) + alpha) / denom;
            kl += after * std::log(after / before);
        }
        total += weight * kl;
    }
    return total;
}

double missing_information(const Cmc& true_cmc, const CountTensor& counts,
                           const DirichletPrior& prior) {
    check_shapes(true_cmc, counts);
    double total = 0.0;
    for (int i = 0; i < true_cmc.n_states(); ++i)
        for (int u = 0; u < true_cmc.n_controls(); ++u)
            total += row_kl_term(true_cmc, counts, prior, i, u);
    return total;
}

double missing_information(const Cmc& true_cmc, const CountTensor& counts,
                           const DirichletPrior& prior,
                           std::span<const int> subset) {
    check_shapes(true_cmc, counts);
    double total = 0.0;
    for (int i : subset) {
        if (i < 0 || i >= true_cmc.n_states())
            throw IndexOutOfRange("subset state " + std::to_string(i) + " out of range");
        for (int u = 0; u < true_cmc.n_controls(); ++u)
            total += row_kl_term(true_cmc, counts, prior, i, u);
    }
    return total;
}

std::vector<RowInformation> per_row_missing_information(
    const Cmc& true_cmc, const CountTensor& counts, const DirichletPrior& prior) {
    check_shapes(true_cmc, counts);
    std::vector<RowInformation> rows;
    rows.reserve(static_cast<std::size_t>(true_cmc.n_states()) * true_cmc.n_controls());
    for (int i = 0; i < true_cmc.n_states(); ++i)
        for (int u = 0; u < true_cmc.n_controls(); ++u)
            rows.push_back({i, u, row_kl_term(true_cmc, counts, prior, i, u)});
    return rows;
}

Cmc posterior_estimate(const CountTensor& counts, const DirichletPrior& prior) {
    Cmc estimate(counts.n_states(), counts.n_controls());
    for (int u = 0; u < counts.n_controls(); ++u)
        for (int i = 0; i < counts.n_states(); ++i) {
            const auto p = posterior_row(counts, prior, u, i);
            for (int j = 0; j < counts.n_states(); ++j)
                estimate.set_probability(u, i, j, p[static_cast<std::size_t>(j)]);
        }
    return estimate;
}

}  // namespace cmcx
