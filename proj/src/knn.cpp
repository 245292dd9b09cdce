// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/error.hpp"
#include "mlgaze/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mlgaze {

KnnModel knn_fit(const LabeledMatrix &train, int k) {
  train.validate();
  if (k < 1)
    throw UsageError("k must be >= 1");
  if (static_cast<std::size_t>(k) > train.size())
    throw UsageError("k = " + std::to_string(k) + " exceeds the " +
                     std::to_string(train.size()) + " training rows");
  return {train.rows, train.labels, k, train.n_classes()};
}

std::vector<std::size_t> knn_neighbors(const KnnModel &model,
                                       const std::vector<double> &query) {
  const auto n = model.x.size();
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (model.x[i].size() != query.size())
      throw UsageError("query width does not match the training rows");
    double s = 0.0;
    for (std::size_t j = 0; j < query.size(); ++j) {
      const double t = model.x[i][j] - query[j];
      s += t * t;
    }
    dist[i] = s;
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  const auto k = static_cast<std::size_t>(model.k);
  std::partial_sort(idx.begin(), idx.begin() + static_cast<long>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
                    });
  idx.resize(k);
  return idx;
}

std::vector<int> knn_predict(const KnnModel &model, const Rows &rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  std::vector<int> votes(model.n_classes);
  std::vector<double> dist_sum(model.n_classes);
  for (const auto &q : rows) {
    std::fill(votes.begin(), votes.end(), 0);
    std::fill(dist_sum.begin(), dist_sum.end(), 0.0);
    for (auto i : knn_neighbors(model, q)) {
      const auto c = static_cast<std::size_t>(model.y[i]);
      double s = 0.0;
      for (std::size_t j = 0; j < q.size(); ++j)
        s += (model.x[i][j] - q[j]) * (model.x[i][j] - q[j]);
      ++votes[c];
      dist_sum[c] += std::sqrt(s);
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < votes.size(); ++c) {
      if (votes[c] > votes[best])
        best = c;
      else if (votes[c] == votes[best] && votes[c] > 0 &&
               dist_sum[c] / votes[c] < dist_sum[best] / votes[best])
        best = c;
    }
    out.push_back(static_cast<int>(best));
  }
  return out;
}

} // namespace mlgaze
