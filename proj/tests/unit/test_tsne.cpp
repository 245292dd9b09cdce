// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include "mlgaze/error.hpp"
#include "mlgaze/tsne.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mlgaze;
using namespace testing_support;

namespace {

Rows random_rows(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rows r;
  for (std::size_t i = 0; i < n; ++i)
    r.push_back(random_vector(d, seed * 1000 + i));
  return r;
}

double entropy_perplexity(const std::vector<double> &p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0)
      h -= v * std::log(v);
  return std::exp(h);
}

} // namespace

TEST(Affinities, UniformDistancesGiveFullPerplexity) {
  const std::size_t n = 12;
  Rows d(n, std::vector<double>(n, 4.0));
  for (std::size_t i = 0; i < n; ++i)
    d[i][i] = 0.0;
  const auto c = conditional_affinities(d, 5.0);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(c.perplexity[i], static_cast<double>(n - 1), 1e-9);
    for (std::size_t j = 0; j < n; ++j)
      EXPECT_NEAR(c.p[i][j], i == j ? 0.0 : 1.0 / static_cast<double>(n - 1), 1e-12);
  }
}

TEST(Affinities, RowPerplexityHitsTarget) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto x = random_rows(90, 5, seed);
    const auto c = conditional_affinities(squared_distances(x), 20.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_NEAR(c.perplexity[i], 20.0, 1e-3);
      EXPECT_NEAR(entropy_perplexity(c.p[i]), 20.0, 1e-3);
      EXPECT_EQ(c.p[i][i], 0.0);
    }
  }
}

TEST(Affinities, JointIsSymmetricAndNormalized) {
  const auto x = random_rows(70, 4, 9);
  const auto p = joint_affinities(conditional_affinities(squared_distances(x), 15.0));
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      EXPECT_GE(p[i][j], 0.0);
      EXPECT_NEAR(p[i][j], p[j][i], 1e-15);
      total += p[i][j];
    }
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(Affinities, SquaredDistances) {
  const auto d = squared_distances({{0, 0}, {3, 4}});
  EXPECT_EQ(d[0][1], 25.0);
  EXPECT_EQ(d[1][0], 25.0);
  EXPECT_EQ(d[0][0], 0.0);
}

TEST(Tsne, ShapeAndDecreasingObjective) {
  const auto m = blobs({{0, 0, 0}, {6, 0, 0}, {0, 6, 0}}, 30, 1.0, 4);
  TsneOptions o;
  o.perplexity = 20.0;
  o.iterations = 400;
  const auto r = tsne(m, 3, o);
  ASSERT_EQ(r.coords.size(), 90u);
  for (const auto &c : r.coords) {
    ASSERT_EQ(c.size(), 2u);
    EXPECT_TRUE(std::isfinite(c[0]) && std::isfinite(c[1]));
  }
  ASSERT_GE(r.kl_trace.size(), 2u);
  EXPECT_LT(r.kl_trace.back(), r.kl_trace.front());
  EXPECT_EQ(r.kl_iterations.front(), 0);
  EXPECT_EQ(r.kl_iterations.back(), o.iterations);
  for (double v : r.row_perplexity)
    EXPECT_NEAR(v, 20.0, 1e-3);
}

TEST(Tsne, DeterministicPerSeed) {
  const auto x = random_rows(40, 3, 2);
  TsneOptions o;
  o.perplexity = 10.0;
  o.iterations = 100;
  EXPECT_EQ(tsne(x, 8, o).coords, tsne(x, 8, o).coords);
}

TEST(Tsne, InfeasiblePerplexity) {
  const auto x = random_rows(30, 3, 1);
  TsneOptions o;
  o.perplexity = 10.0; // needs perplexity < N/3
  EXPECT_THROW(tsne(x, 0, o), UsageError);
  o.perplexity = 5.0;
  o.out_dims = 3;
  EXPECT_THROW(tsne(x, 0, o), UsageError);
}
