// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/error.hpp"
#include "mlgaze/learn.hpp"
#include "mlgaze/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mlgaze {

namespace {

double gini(const std::vector<double> &counts, double total) {
  if (total <= 0.0)
    return 0.0;
  double s = 0.0;
  for (double c : counts)
    s += (c / total) * (c / total);
  return 1.0 - s;
}

struct TreeBuilder {
  const LabeledMatrix &data;
  std::size_t n_classes;
  int max_depth;
  std::size_t max_features;
  double n_total;
  Rng &rng;
  std::vector<TreeNode> nodes;
  std::vector<double> importance;

  int majority(const std::vector<double> &counts) const {
    return static_cast<int>(std::max_element(counts.begin(), counts.end()) -
                            counts.begin());
  }

  int build(std::vector<std::size_t> &idx, int depth) {
    std::vector<double> counts(n_classes, 0.0);
    for (auto i : idx)
      counts[static_cast<std::size_t>(data.labels[i])] += 1.0;
    const double n = static_cast<double>(idx.size());
    const int node_id = static_cast<int>(nodes.size());
    nodes.push_back({});
    nodes[static_cast<std::size_t>(node_id)].label = majority(counts);

    const double parent = gini(counts, n);
    if (depth >= max_depth || idx.size() < 2 || parent <= 0.0)
      return node_id;

    std::vector<std::size_t> features(data.cols());
    std::iota(features.begin(), features.end(), 0);
    std::shuffle(features.begin(), features.end(), rng);
    features.resize(max_features);

    double best_gain = 0.0;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::size_t> sorted = idx;
    std::vector<double> left(n_classes);
    std::vector<double> right(n_classes);
    for (auto f : features) {
      std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
        return data.rows[a][f] < data.rows[b][f];
      });
      std::fill(left.begin(), left.end(), 0.0);
      for (std::size_t s = 0; s + 1 < sorted.size(); ++s) {
        left[static_cast<std::size_t>(data.labels[sorted[s]])] += 1.0;
        const double lo = data.rows[sorted[s]][f];
        const double hi = data.rows[sorted[s + 1]][f];
        if (!(hi > lo))
          continue;
        const double nl = static_cast<double>(s + 1);
        const double nr = n - nl;
        for (std::size_t c = 0; c < n_classes; ++c)
          right[c] = counts[c] - left[c];
        const double gain =
            parent - (nl / n) * gini(left, nl) - (nr / n) * gini(right, nr);
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = static_cast<int>(f);
          best_threshold = lo + (hi - lo) / 2.0;
        }
      }
    }
    if (best_feature < 0)
      return node_id;

    importance[static_cast<std::size_t>(best_feature)] += (n / n_total) * best_gain;
    std::vector<std::size_t> li, ri;
    for (auto i : idx)
      (data.rows[i][static_cast<std::size_t>(best_feature)] <= best_threshold ? li : ri)
          .push_back(i);
    const int l = build(li, depth + 1);
    const int r = build(ri, depth + 1);
    auto &node = nodes[static_cast<std::size_t>(node_id)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = l;
    node.right = r;
    return node_id;
  }
};

int tree_predict(const std::vector<TreeNode> &tree, const std::vector<double> &x) {
  std::size_t at = 0;
  while (tree[at].feature >= 0)
    at = static_cast<std::size_t>(
        x[static_cast<std::size_t>(tree[at].feature)] <= tree[at].threshold
            ? tree[at].left
            : tree[at].right);
  return tree[at].label;
}

} // namespace

ForestModel forest_fit(const LabeledMatrix &train, int n_estimators,
                       int max_depth, std::uint64_t seed) {
  train.validate();
  if (n_estimators < 1 || max_depth < 1)
    throw UsageError("forest needs n_estimators >= 1 and max_depth >= 1");
  if (train.n_classes() < 2 || train.size() == 0)
    throw UsageError("forest needs at least two classes");
  const auto d = train.cols();
  const auto max_features = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(d)))));

  ForestModel model;
  model.n_estimators = n_estimators;
  model.max_depth = max_depth;
  model.n_classes = train.n_classes();
  model.importances.assign(d, 0.0);

  const auto n = train.size();
  for (int t = 0; t < n_estimators; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> boot(n);
    for (auto &i : boot)
      i = pick(rng);
    TreeBuilder b{train, model.n_classes, max_depth, max_features,
                  static_cast<double>(n), rng, {}, std::vector<double>(d, 0.0)};
    b.build(boot, 0);
    for (std::size_t f = 0; f < d; ++f)
      model.importances[f] += b.importance[f] / n_estimators;
    model.trees.push_back(std::move(b.nodes));
  }
  const double total =
      std::accumulate(model.importances.begin(), model.importances.end(), 0.0);
  if (total > 0.0)
    for (auto &v : model.importances)
      v /= total;
  return model;
}

std::vector<int> forest_predict(const ForestModel &model, const Rows &rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  std::vector<int> votes(model.n_classes);
  for (const auto &x : rows) {
    std::fill(votes.begin(), votes.end(), 0);
    for (const auto &tree : model.trees)
      ++votes[static_cast<std::size_t>(tree_predict(tree, x))];
    out.push_back(static_cast<int>(std::max_element(votes.begin(), votes.end()) -
                                   votes.begin()));
  }
  return out;
}

std::vector<double> forest_importance(const LabeledMatrix &train,
                                      int n_estimators, int max_depth,
                                      std::uint64_t seed) {
  return forest_fit(train, n_estimators, max_depth, seed).importances;
}

} // namespace mlgaze
