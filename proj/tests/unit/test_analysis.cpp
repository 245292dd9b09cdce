// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include "mlgaze/analysis.hpp"
#include "mlgaze/error.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace mlgaze;
using namespace testing_support;

namespace {

std::vector<double> naive_median_filter(const std::vector<double> &x, int w) {
  const long n = static_cast<long>(x.size());
  std::vector<double> y(x.size());
  for (long i = 0; i < n; ++i) {
    std::vector<double> win;
    for (long j = i - w / 2; j <= i + w / 2; ++j)
      win.push_back(x[static_cast<std::size_t>(std::clamp(j, 0L, n - 1))]);
    std::sort(win.begin(), win.end());
    y[static_cast<std::size_t>(i)] = win[win.size() / 2];
  }
  return y;
}

double trapezoid(const KdeCurve &c) {
  double s = 0.0;
  for (std::size_t i = 1; i < c.eval_points.size(); ++i)
    s += 0.5 * (c.densities[i] + c.densities[i - 1]) *
         (c.eval_points[i] - c.eval_points[i - 1]);
  return s;
}

} // namespace

TEST(Quantiles, LinearInterpolation) {
  const std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8, 9, 100};
  EXPECT_DOUBLE_EQ(quantile(x, 0.25), 3.25);
  EXPECT_DOUBLE_EQ(quantile(x, 0.75), 7.75);
  EXPECT_DOUBLE_EQ(median(x), 5.5);
  EXPECT_THROW(quantile(x, 1.5), UsageError);
  EXPECT_THROW(median(std::vector<double>{}), UsageError);
}

TEST(MedianFilter, Constant) {
  const std::vector<double> x(17, 2.5);
  EXPECT_EQ(median_filter(x, 5), x);
}

TEST(MedianFilter, HandExample) {
  const std::vector<double> x = {1, 9, 2, 3, 100, 4};
  EXPECT_EQ(median_filter(x, 3), (std::vector<double>{1, 2, 3, 3, 4, 4}));
}

TEST(MedianFilter, MatchesNaiveOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto n = 1 + static_cast<std::size_t>(seed * 7 % 300);
    auto x = random_vector(n, seed);
    if (seed % 3 == 0)
      for (auto &v : x)
        v = std::round(v); // ties
    const int w = 1 + 2 * static_cast<int>(seed % 25);
    EXPECT_EQ(median_filter(x, w), naive_median_filter(x, w)) << "seed " << seed;
  }
}

TEST(MedianFilter, RejectsEvenKernel) {
  EXPECT_THROW(median_filter(std::vector<double>{1, 2, 3}, 4), UsageError);
  EXPECT_THROW(median_filter(std::vector<double>{1, 2, 3}, 0), UsageError);
}

TEST(MedianFilter, PlateausAreFixed) {
  std::vector<double> x;
  for (int p = 0; p < 5; ++p)
    x.insert(x.end(), 30, static_cast<double>(p * p));
  const auto y = median_filter(x, 11);
  EXPECT_EQ(y, x);
  EXPECT_EQ(median_filter(y, 11), y);
}

TEST(MadOutliers, HandExample) {
  const std::vector<double> x = {2, 4, 6, 8, 100};
  EXPECT_DOUBLE_EQ(mad(x), 2.0);
  EXPECT_EQ(mad_outliers(x, 3.0),
            (std::vector<bool>{false, false, false, false, true}));
}

TEST(MadOutliers, AllEqualFlagsNothing) {
  const std::vector<double> x(9, 1.5);
  EXPECT_EQ(mad_outliers(x, 3.0), std::vector<bool>(9, false));
}

TEST(MadOutliers, SymmetricWithoutOutliers) {
  const std::vector<double> x = {-2, -1, 0, 1, 2};
  EXPECT_EQ(mad_outliers(x, 3.0), std::vector<bool>(5, false));
}

TEST(MadOutliers, MatchesDirectFence) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto x = random_vector(50, seed, -3, 3);
    x[seed % 50] = 40.0;
    const double m = median(x), d = mad(x);
    const auto mask = mad_outliers(x, 3.0);
    for (std::size_t i = 0; i < x.size(); ++i)
      EXPECT_EQ(mask[i], std::abs(x[i] - m) > 3.0 * d);
  }
}

TEST(MadOutliers, ZeroMadFallsBackToIqr) {
  // MAD 0 but IQR fences still catch the far value.
  const std::vector<double> x = {1, 1, 1, 1, 1, 1, 2, 50};
  EXPECT_DOUBLE_EQ(mad(x), 0.0);
  EXPECT_EQ(mad_outliers(x, 3.0), iqr_outliers(x));
  EXPECT_THROW(mad_outliers(std::vector<double>{1, 2}, 3.0), UsageError);
}

TEST(IqrOutliers, HandExample) {
  const std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8, 9, 100};
  auto expected = std::vector<bool>(10, false);
  expected[9] = true;
  EXPECT_EQ(iqr_outliers(x), expected);
}

TEST(IqrOutliers, RampFlagsNothing) {
  std::vector<double> x(100);
  std::iota(x.begin(), x.end(), 1.0);
  EXPECT_EQ(iqr_outliers(x), std::vector<bool>(100, false));
}

TEST(IqrOutliers, MatchesDirectFence) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto x = random_vector(40, seed, 0, 1);
    x[seed % 40] = seed % 2 ? 9.0 : -9.0;
    const double q1 = quantile(x, 0.25), q3 = quantile(x, 0.75);
    const auto mask = iqr_outliers(x);
    for (std::size_t i = 0; i < x.size(); ++i)
      EXPECT_EQ(mask[i], x[i] > q3 + 1.5 * (q3 - q1) || x[i] < q1 - 1.5 * (q3 - q1));
  }
}

TEST(IqrOutliers, BalancedRemovalShrinksIqr) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto x = random_vector(40, seed, 0, 1);
    x[seed % 40] = 9.0;
    x[(seed + 13) % 40] = -9.0;
    const auto mask = iqr_outliers(x);
    std::vector<double> kept;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!mask[i])
        kept.push_back(x[i]);
    ASSERT_EQ(kept.size(), 38u);
    EXPECT_LE(iqr(kept), iqr(x));
  }
}

TEST(Describe, ConstantSeries) {
  const std::vector<double> x(10, 4.2);
  const auto s = describe(x);
  EXPECT_DOUBLE_EQ(s.mean, 4.2);
  EXPECT_DOUBLE_EQ(s.mad, 0.0);
  EXPECT_DOUBLE_EQ(s.iqr, 0.0);
  EXPECT_DOUBLE_EQ(s.ci95_low, 4.2);
  EXPECT_DOUBLE_EQ(s.ci95_high, 4.2);
  EXPECT_EQ(s.n, 10u);
}

TEST(Describe, ShiftEquivariance) {
  const auto x = random_vector(300, 5);
  auto y = x;
  for (auto &v : y)
    v += 3.75;
  const auto a = describe(x), b = describe(y);
  EXPECT_NEAR(b.mean - a.mean, 3.75, 1e-12);
  EXPECT_NEAR(b.ci95_low - a.ci95_low, 3.75, 1e-12);
  EXPECT_NEAR(b.ci95_high - a.ci95_high, 3.75, 1e-12);
  EXPECT_NEAR(b.mad, a.mad, 1e-12);
  EXPECT_NEAR(b.iqr, a.iqr, 1e-12);
  EXPECT_LE(a.ci95_low, a.mean);
  EXPECT_LE(a.mean, a.ci95_high);
  EXPECT_NEAR(a.ci95_high - a.mean, 1.96 * a.sd / std::sqrt(300.0), 1e-12);
}

TEST(Kde, SinglePointClosedForm) {
  const std::vector<double> x = {0.0};
  const std::vector<double> at = {0.0, 50.0};
  const auto c = kde(x, 0.2, at);
  EXPECT_NEAR(c.densities[0], 1.9947, 1e-3);
  EXPECT_NEAR(c.densities[0], 1.0 / (0.2 * std::sqrt(2 * std::numbers::pi)), 1e-12);
  EXPECT_LT(c.densities[1], 1e-300);
}

TEST(Kde, IntegratesToOne) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto x = random_vector(20 + seed, seed, 0, 6);
    const auto c = kde(x, 0.2, kde_grid(x, 0.2));
    const double area = trapezoid(c);
    EXPECT_GE(area, 0.98);
    EXPECT_LE(area, 1.02);
    for (double d : c.densities)
      EXPECT_GE(d, 0.0);
  }
}

TEST(Kde, PermutationInvariant) {
  auto x = random_vector(64, 9);
  const auto grid = kde_grid(x, 0.3, 40);
  const auto a = kde(x, 0.3, grid);
  std::reverse(x.begin(), x.end());
  std::rotate(x.begin(), x.begin() + 17, x.end());
  const auto b = kde(x, 0.3, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    EXPECT_NEAR(a.densities[i], b.densities[i], 1e-12);
}

TEST(Kde, RejectsBadBandwidth) {
  EXPECT_THROW(kde(std::vector<double>{1.0}, 0.0, std::vector<double>{0.0}),
               UsageError);
}

TEST(Correlation, SelfAndNegation) {
  const auto v = random_vector(15, 1);
  auto neg = v;
  for (auto &x : neg)
    x = -x;
  const auto m = correlation_of_vectors({"a", "b", "c"}, {v, v, neg});
  EXPECT_NEAR(*m.r[0][1], 1.0, 1e-12);
  EXPECT_NEAR(*m.r[0][2], -1.0, 1e-12);
  EXPECT_EQ(*m.r[1][1], 1.0);
}

TEST(Correlation, MatchesCovarianceOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::vector<std::vector<double>> vs;
    for (int k = 0; k < 4; ++k)
      vs.push_back(random_vector(15, seed * 10 + static_cast<std::uint64_t>(k)));
    const auto m = correlation_of_vectors({"a", "b", "c", "d"}, vs);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        const double mi = mean(vs[i]), mj = mean(vs[j]);
        double c = 0, si = 0, sj = 0;
        for (std::size_t t = 0; t < 15; ++t) {
          c += (vs[i][t] - mi) * (vs[j][t] - mj);
          si += (vs[i][t] - mi) * (vs[i][t] - mi);
          sj += (vs[j][t] - mj) * (vs[j][t] - mj);
        }
        EXPECT_NEAR(*m.r[i][j], c / std::sqrt(si * sj), 1e-12);
        EXPECT_EQ(*m.r[i][j], *m.r[j][i]);
      }
  }
}

TEST(Correlation, ZeroVarianceIsMissing) {
  const auto m = correlation_of_vectors(
      {"flat", "v"}, {std::vector<double>(15, 1.0), random_vector(15, 2)});
  EXPECT_FALSE(m.r[0][1]);
  EXPECT_FALSE(m.r[0][0]);
  EXPECT_TRUE(m.r[1][1]);
}

TEST(Correlation, PerAoiVectors) {
  auto a = make_series(random_vector(60, 1), 4);
  auto b = a;
  for (auto &v : b.frontal_err)
    v = 2.0 * std::abs(v) + 1.0;
  const auto m = correlation_matrix({{"a", &a}, {"b", &b}});
  EXPECT_NEAR(*m.r[0][1], 1.0, 1e-12);
}

TEST(SpatialMap, ConstantAndIndicator) {
  const auto angles = aoi_gt_angles([] {
    GazeSession s;
    s.screen = ScreenConfig::desktop();
    s.aoi_grid = make_aoi_grid(s.screen);
    return s;
  }());
  const auto c = spatial_error_map(constant_series(1.0), angles);
  ASSERT_EQ(c.cells.size(), 15u);
  for (const auto &cell : c.cells)
    EXPECT_DOUBLE_EQ(*cell.mean_abs_error, 1.0);
  EXPECT_DOUBLE_EQ(c.cells[7].gt_yaw, 0.0);

  auto e = constant_series(0.0);
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e.aoi_ids[i] == 1)
      e.frontal_err[i] = -2.0;
  const auto ind = spatial_error_map(e, angles);
  int nonzero = 0;
  for (const auto &cell : ind.cells)
    nonzero += *cell.mean_abs_error != 0.0;
  EXPECT_EQ(nonzero, 1);
  EXPECT_DOUBLE_EQ(*ind.cells[0].mean_abs_error, 2.0);
}

TEST(SpatialMap, MatchesGroupbyOracleAndMarksEmpty) {
  auto e = make_series(random_vector(150, 4), 3);
  // Drop AOI 6 entirely.
  ErrorSeries kept;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e.aoi_ids[i] == 6)
      continue;
    kept.frontal_err.push_back(e.frontal_err[i]);
    kept.yaw_err.push_back(e.yaw_err[i]);
    kept.pitch_err.push_back(e.pitch_err[i]);
    kept.aoi_ids.push_back(e.aoi_ids[i]);
    kept.timestamps.push_back(e.timestamps[i]);
  }
  std::vector<AngleSample> angles(15);
  const auto map = spatial_error_map(kept, angles);
  for (int a = 1; a <= 15; ++a) {
    double s = 0;
    int n = 0;
    for (std::size_t i = 0; i < kept.size(); ++i)
      if (kept.aoi_ids[i] == a) {
        s += std::abs(kept.frontal_err[i]);
        ++n;
      }
    const auto &cell = map.cells[static_cast<std::size_t>(a - 1)];
    if (n == 0) {
      EXPECT_FALSE(cell.mean_abs_error);
      EXPECT_EQ(cell.samples, 0u);
    } else {
      EXPECT_NEAR(*cell.mean_abs_error, s / n, 1e-12);
    }
  }
}

TEST(CleanErrors, MethodsBehave) {
  auto e = make_series(random_vector(150, 8, -1, 1), 10);
  e.frontal_err[20] = 30.0;
  e.pitch_err[77] = -30.0;

  const auto med = clean_errors(e, {CleanMethod::median, 5, 3.0});
  EXPECT_EQ(med.size(), e.size());
  EXPECT_LT(std::abs(med.frontal_err[20]), 1.0);

  const auto dropped = clean_errors(e, {CleanMethod::mad, 41, 3.0});
  EXPECT_EQ(dropped.size(), e.size() - 2);
  const auto mask = outlier_drop_mask(e, {CleanMethod::iqr, 41, 3.0});
  EXPECT_TRUE(mask[20]);
  EXPECT_TRUE(mask[77]);

  const auto none = clean_errors(e, {CleanMethod::none, 41, 3.0});
  EXPECT_EQ(none.frontal_err, e.frontal_err);
  EXPECT_EQ(parse_clean_method("MAD"), CleanMethod::mad);
  EXPECT_FALSE(parse_clean_method("mean"));
}
