#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cmcx/cmc.hpp"
#include "cmcx/counts.hpp"

namespace cmcx {

/**
 * Posterior-mean estimate of the transition row (u, i):
 *
 *     p_hat[j] = (F[u][i][j] + alpha) / sum_j' (F[u][i][j'] + alpha)
 *
 * Always sums to 1 and is strictly positive (alpha > 0), even with no data.
 */
std::vector<double> posterior_row(const CountTensor& counts,
                                  const DirichletPrior& prior, int u, int i);

/**
 * Kullback-Leibler divergence sum_j p[j] * ln(p[j] / q[j]) in nats, with
 * the convention 0 * ln(0 / q) = 0. Throws LengthMismatch on unequal
 * lengths and UnsupportedSupport where p[j] > 0 but q[j] == 0.
 */
double kl_divergence(std::span<const double> p, std::span<const double> q);

/**
 * Predicted information gain of trying control u in state i: the expected
 * KL divergence between the row estimate after one more hypothetical
 * observation and the current row estimate, where the expectation over the
 * hypothetical successor j* is taken under the current estimate itself:
 *
 *     PIG(i, u, F) = sum_j* p_hat[j*] * KL(posterior(F + e_uij*) || posterior(F))
 *
 * Depends only on (i, u, F, alpha); the true transition probabilities never
 * enter. Non-negative, and shrinks as the row's counts grow.
 */
double pig(int i, int u, const CountTensor& counts, const DirichletPrior& prior);

/**
 * Total estimation error against the ground truth, in nats: the KL
 * divergence from each true row p[u][i][.] to its estimate, summed over
 * every (i, u). This metric reads the true chain and therefore is for
 * evaluation only, never available to a learner.
 */
double missing_information(const Cmc& true_cmc, const CountTensor& counts,
                           const DirichletPrior& prior);

/// Same, but summed only over states listed in `subset`.
double missing_information(const Cmc& true_cmc, const CountTensor& counts,
                           const DirichletPrior& prior,
                           std::span<const int> subset);

/// One (state, control) row of the missing-information sum.
struct RowInformation {
    int state = 0;
    int control = 0;
    double nats = 0.0;
};

/// The individual KL terms of missing_information, keyed by (i, u) in
/// lexicographic order. Their sum equals the total.
std::vector<RowInformation> per_row_missing_information(
    const Cmc& true_cmc, const CountTensor& counts, const DirichletPrior& prior);

/// The full posterior-mean transition model as a Cmc (all costs zero).
Cmc posterior_estimate(const CountTensor& counts, const DirichletPrior& prior);

}  // namespace cmcx
