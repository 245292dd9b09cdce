// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include "mlgaze/error.hpp"
#include "mlgaze/evaluate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace mlgaze;
using namespace testing_support;

namespace {

// Triangles of one class, each vertex shadowed by a nearer point of the
// other class, plus an alternating outer ring. Three neighbours recover the
// triangle label; one or five or more do not.
LabeledMatrix three_nn_data() {
  Rng rng(0);
  std::normal_distribution<double> jitter(0.0, 0.01);
  Rows rows;
  std::vector<int> labels;
  auto add = [&](double x, double y, int label) {
    rows.push_back({x + jitter(rng), y + jitter(rng)});
    labels.push_back(label);
  };
  for (int u = 0; u < 40; ++u) {
    const double c = 50.0 * u;
    const int a = u % 2, b = 1 - a;
    for (int t = 0; t < 3; ++t) {
      const double ang = 2 * std::numbers::pi * t / 3 + 0.3;
      const double r = 1 / std::sqrt(3.0);
      add(c + r * std::cos(ang), c + r * std::sin(ang), a);
      add(c + 1.17 * r * std::cos(ang), c + 1.17 * r * std::sin(ang), b);
    }
    for (int j = 0; j < 4; ++j) {
      const double ang = 2 * std::numbers::pi * j / 4;
      add(c + 3 * std::cos(ang), c + 3 * std::sin(ang), j % 2 ? b : a);
    }
  }
  return make_matrix(rows, labels, 2);
}

} // namespace

TEST(Report, HandExample) {
  const auto r = classification_report({0, 0, 1, 1}, {0, 1, 1, 1}, 2);
  EXPECT_DOUBLE_EQ(r.rates.per_class[0].tpr, 0.5);
  EXPECT_DOUBLE_EQ(r.rates.per_class[0].fpr, 0.0);
  EXPECT_DOUBLE_EQ(r.rates.per_class[1].tpr, 1.0);
  EXPECT_DOUBLE_EQ(r.rates.per_class[1].fpr, 0.5);
  EXPECT_NEAR(r.rates.precision, 0.8333, 1e-4);
  EXPECT_DOUBLE_EQ(r.rates.accuracy, 0.75);
  EXPECT_EQ(r.confusion.counts, (std::vector<std::vector<long>>{{1, 1}, {0, 2}}));
  EXPECT_EQ(r.confusion.total(), 4);
}

TEST(Report, Perfect) {
  const auto r = classification_report({0, 1, 2, 2}, {0, 1, 2, 2}, 3);
  EXPECT_EQ(r.rates.tpr, 1.0);
  EXPECT_EQ(r.rates.fpr, 0.0);
  EXPECT_EQ(r.rates.precision, 1.0);
  EXPECT_FALSE(r.rates.precision_warning);
}

TEST(Report, NeverPredictedClassWarns) {
  const auto r = classification_report({0, 1, 2}, {0, 1, 1}, 3);
  EXPECT_TRUE(r.rates.per_class[2].precision_undefined);
  EXPECT_EQ(r.rates.per_class[2].precision, 0.0);
  EXPECT_TRUE(r.rates.precision_warning);
}

TEST(Report, RateIdentities) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    std::uniform_int_distribution<int> u(0, 4);
    std::vector<int> t(60), p(60);
    for (std::size_t i = 0; i < 60; ++i) {
      t[i] = u(rng);
      p[i] = u(rng);
    }
    const auto r = classification_report(t, p, 5);
    for (std::size_t c = 0; c < 5; ++c) {
      const auto &k = r.rates.per_class[c];
      const bool present = std::count(t.begin(), t.end(), static_cast<int>(c)) > 0;
      if (present)
        EXPECT_NEAR(k.tpr + k.fnr, 1.0, 1e-9);
      EXPECT_NEAR(k.tnr + k.fpr, 1.0, 1e-9);
      long row = 0;
      for (long v : r.confusion.counts[c])
        row += v;
      EXPECT_EQ(row, std::count(t.begin(), t.end(), static_cast<int>(c)));
    }
    EXPECT_EQ(r.confusion.total(), 60);
  }
}

TEST(Report, Errors) {
  EXPECT_THROW(classification_report({0, 3}, {0, 1}, 2), DataError);
  EXPECT_THROW(classification_report({0}, {0, 1}, 2), UsageError);
}

TEST(Folds, PartitionAndSizes) {
  std::vector<int> labels(100);
  for (std::size_t i = 0; i < 100; ++i)
    labels[i] = static_cast<int>(i % 4);
  const auto f = stratified_folds(labels, 4, 10, 3);
  ASSERT_EQ(f.size(), 100u);
  for (int k = 0; k < 10; ++k)
    EXPECT_EQ(std::count(f.begin(), f.end(), k), 10);
  EXPECT_EQ(stratified_folds(labels, 4, 10, 3), f);
}

TEST(Folds, ClassTooSmall) {
  std::vector<int> labels(30, 0);
  labels[0] = 1;
  EXPECT_THROW(stratified_folds(labels, 2, 10, 0), UsageError);
  EXPECT_THROW(stratified_folds(labels, 2, 1, 0), UsageError);
}

TEST(KfoldCv, PerfectlySeparable) {
  const auto m = blobs({{0, 0}, {50, 50}}, 30, 0.5, 1);
  ModelSpec spec;
  spec.k = 3;
  const auto cv = kfold_cv(m, spec, 10, 4);
  ASSERT_EQ(cv.fold_scores.size(), 10u);
  for (double s : cv.fold_scores)
    EXPECT_EQ(s, 1.0);
  EXPECT_EQ(cv.mean, 1.0);
  EXPECT_EQ(cv.sd, 0.0);
  EXPECT_EQ(cv.predicted, m.labels);
}

TEST(KfoldCv, NoStandardizationLeakage) {
  const auto m = blobs({{0, 0, 0}, {1, 2, 3}}, 25, 1.0, 2);
  std::vector<std::set<std::size_t>> seen;
  const auto cv = kfold_cv(m, {}, 5, 7, [&](const FoldInfo &f) {
    ASSERT_NE(f.scale, nullptr);
    for (std::size_t j = 0; j < 3; ++j) {
      double mu = 0.0;
      for (auto i : f.train_indices)
        mu += m.rows[i][j];
      mu /= static_cast<double>(f.train_indices.size());
      EXPECT_NEAR(f.scale->mean[j], mu, 1e-12);
    }
    std::set<std::size_t> test(f.test_indices.begin(), f.test_indices.end());
    for (auto i : f.train_indices)
      EXPECT_FALSE(test.count(i));
    EXPECT_EQ(test.size() + f.train_indices.size(), m.size());
    seen.push_back(test);
  });
  ASSERT_EQ(seen.size(), 5u);
  std::set<std::size_t> all;
  for (const auto &s : seen)
    for (auto i : s)
      EXPECT_TRUE(all.insert(i).second);
  EXPECT_EQ(all.size(), m.size());
}

TEST(GridSearch, SinglePoint) {
  const auto m = blobs({{0, 0}, {3, 3}}, 20, 1.0, 3);
  ParamGrid g;
  g.k = {5};
  const auto r = grid_search(m, ModelFamily::knn, g, 5, 1);
  ASSERT_EQ(r.table.size(), 1u);
  EXPECT_EQ(r.table[r.best].spec.k, 5);
  ModelSpec base;
  base.k = 7;
  const auto fallback = grid_search(m, ModelFamily::knn, ParamGrid{}, 5, 1, base);
  ASSERT_EQ(fallback.table.size(), 1u);
  EXPECT_EQ(fallback.table[0].spec.k, 7);
}

TEST(GridSearch, PicksThreeNeighbours) {
  const auto m = three_nn_data();
  ParamGrid g;
  g.k = {1, 3, 5, 7, 9};
  const auto r = grid_search(m, ModelFamily::knn, g, 10, 0);
  ASSERT_EQ(r.table.size(), 5u);
  EXPECT_EQ(r.table[r.best].spec.k, 3);
  for (std::size_t i = 0; i < r.table.size(); ++i)
    if (i != r.best)
      EXPECT_LT(r.table[i].cv.mean, r.table[r.best].cv.mean);
}

TEST(GridSearch, ReproducibleAndTableSize) {
  const auto m = blobs({{0, 0}, {1.5, 1.5}, {0, 2}}, 20, 1.0, 8);
  ParamGrid g;
  g.C = {1, 10};
  g.gamma = {0.5, 1};
  const auto a = grid_search(m, ModelFamily::svm, g, 5, 2);
  const auto b = grid_search(m, ModelFamily::svm, g, 5, 2);
  ASSERT_EQ(a.table.size(), 4u);
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(format_grid_csv(a), format_grid_csv(b));
}

TEST(GridSearch, TiesGoToSmallestTuple) {
  const auto m = blobs({{0, 0}, {50, 50}}, 20, 0.5, 1);
  ParamGrid g;
  g.k = {7, 3, 5};
  const auto r = grid_search(m, ModelFamily::knn, g, 5, 0);
  ASSERT_EQ(r.table.size(), 3u);
  EXPECT_EQ(r.table[r.best].spec.k, 3);
}

TEST(LearningCurve, ShapeAndOverfitting) {
  int overfit = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = blobs({{0, 0}, {1, 1}, {0, 1.5}}, 60, 0.8, seed);
    ModelSpec spec;
    spec.k = 1;
    const auto lc = learning_curve(m, spec, {30, 60, 90, 120}, 5, seed);
    ASSERT_EQ(lc.train_sizes.size(), 4u);
    ASSERT_EQ(lc.train_scores.size(), 4u);
    ASSERT_EQ(lc.cv_scores.size(), 4u);
    overfit += lc.train_scores.front() >= lc.cv_scores.front();
  }
  EXPECT_EQ(overfit, 10);
  const auto m = blobs({{0, 0}, {1, 1}}, 20, 0.8, 0);
  EXPECT_THROW(learning_curve(m, {}, {20, 10}, 5, 0), UsageError);
  EXPECT_THROW(learning_curve(m, {}, {500}, 5, 0), UsageError);
}

TEST(LearningCurve, FlattensAtScale) {
  const auto m = blobs({{0, 0}, {2, 2}, {0, 3}}, 200, 1.0, 5);
  const auto lc = learning_curve(m, {}, {100, 200, 300, 400}, 5, 5);
  EXPECT_LT(std::abs(lc.cv_scores[3] - lc.cv_scores[2]), 0.05);
}

TEST(Csv, Formats) {
  const auto r = classification_report({0, 0, 1, 1}, {0, 1, 1, 1}, 2);
  auto cm = r.confusion;
  cm.class_names = {"A", "B"};
  const auto text = format_confusion_csv(cm);
  EXPECT_NE(text.find("A"), std::string::npos);
  EXPECT_FALSE(format_rates_csv(r.rates, {"A", "B"}).empty());
}
