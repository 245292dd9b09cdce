// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_TSNE_HPP
#define MLGAZE_TSNE_HPP

#include "mlgaze/features.hpp"

#include <cstdint>
#include <vector>

namespace mlgaze {

struct TsneOptions {
  double perplexity = 80.0;
  int out_dims = 2;
  int iterations = 1000;
  double learning_rate = 200.0;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  int momentum_switch_iter = 250;
  double exaggeration = 12.0;
  int exaggeration_iters = 250;
  int kl_every = 50; ///< KL is also recorded at the first and last iteration
};

/// Conditional neighbour distributions p_{j|i} of every row.
struct ConditionalAffinities {
  Rows p;                          ///< row i holds p_{j|i}, zero on the diagonal
  std::vector<double> beta;        ///< 1 / (2 sigma_i^2)
  std::vector<double> perplexity;  ///< realized exp(H) of each row, H in nats
};

/// Binary search per row on the precision of a Gaussian over squared
/// distances until exp(H(p_i)) matches `perplexity`.
ConditionalAffinities conditional_affinities(const Rows &sq_distances,
                                             double perplexity);

/// (p_{j|i} + p_{i|j}) / 2N.
Rows joint_affinities(const ConditionalAffinities &cond);

Rows squared_distances(const Rows &x);

struct TsneResult {
  Rows coords;                     ///< N x out_dims
  std::vector<double> row_perplexity;
  std::vector<int> kl_iterations;
  std::vector<double> kl_trace;    ///< KL(P||Q) against the unexaggerated P
};

double kl_divergence(const Rows &p, const Rows &y);

/// Exact O(N^2) t-SNE. Throws UsageError unless perplexity < N / 3.
TsneResult tsne(const Rows &x, std::uint64_t seed,
                const TsneOptions &opts = {});
TsneResult tsne(const LabeledMatrix &m, std::uint64_t seed,
                const TsneOptions &opts = {});

} // namespace mlgaze

#endif // MLGAZE_TSNE_HPP
