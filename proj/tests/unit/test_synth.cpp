// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/analysis.hpp"
#include "mlgaze/error.hpp"
#include "mlgaze/geometry.hpp"
#include "mlgaze/synth.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

using namespace mlgaze;

namespace {

SessionMeta meta_for(Condition c) {
  SessionMeta m;
  m.participant_id = "S01";
  m.platform = Platform::desktop;
  m.condition = c;
  m.user_distance_mm = nominal_distance_mm(c);
  return m;
}

} // namespace

TEST(Synth, ZeroProfileGivesZeroErrors) {
  ConditionProfile p;
  p.condition = Condition::UD60;
  const auto s = synth_session(p, ScreenConfig::desktop(), meta_for(Condition::UD60), 1);
  EXPECT_EQ(s.records.size(), 15u * 41u);
  const auto e = compute_errors(s);
  for (std::size_t i = 0; i < e.size(); ++i) {
    EXPECT_NEAR(e.frontal_err[i], 0.0, 1e-9);
    EXPECT_NEAR(e.yaw_err[i], 0.0, 1e-9);
    EXPECT_NEAR(e.pitch_err[i], 0.0, 1e-9);
  }
}

TEST(Synth, Ud60CalibratedToTargets) {
  const auto p = default_profile(Platform::desktop, Condition::UD60);
  EXPECT_DOUBLE_EQ(p.mean_error, 2.04);
  EXPECT_DOUBLE_EQ(p.mad, 1.77);
  double mean = 0.0, mad = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = synth_session(p, ScreenConfig::desktop(), meta_for(Condition::UD60), seed);
    const auto d = describe(compute_errors(s).frontal_err);
    mean += d.mean / 20.0;
    mad += d.mad / 20.0;
  }
  EXPECT_NEAR(mean, 2.04, 0.15 * 2.04);
  EXPECT_NEAR(mad, 1.77, 0.15 * 1.77);
}

TEST(Synth, YawSkewedIncreasesAlongYaw) {
  ConditionProfile p;
  p.condition = Condition::HeadYaw20;
  p.mean_error = 2.0;
  p.mad = 0.8;
  p.mode = SpatialMode::yaw_skewed;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = synth_session(p, ScreenConfig::desktop(), meta_for(Condition::HeadYaw20), seed);
    const auto map = spatial_error_map(compute_errors(s), aoi_gt_angles(s));
    std::map<double, std::pair<double, int>> by_yaw;
    for (const auto &c : map.cells) {
      ASSERT_TRUE(c.mean_abs_error);
      const double key = std::round(c.gt_yaw * 1e6) / 1e6;
      by_yaw[key].first += *c.mean_abs_error;
      by_yaw[key].second += 1;
    }
    ASSERT_EQ(by_yaw.size(), 5u);
    double prev = -1.0;
    for (const auto &[yaw, acc] : by_yaw) {
      const double v = acc.first / acc.second;
      EXPECT_GT(v, prev) << "yaw " << yaw << " seed " << seed;
      prev = v;
    }
  }
}

TEST(Synth, Deterministic) {
  const auto p = default_profile(Platform::tablet, Condition::PlatRoll20);
  SessionMeta m = meta_for(Condition::PlatRoll20);
  m.platform = Platform::tablet;
  const auto a = synth_session(p, ScreenConfig::tablet(), m, 42);
  const auto b = synth_session(p, ScreenConfig::tablet(), m, 42);
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(format_session(a), format_session(b));
  EXPECT_NE(synth_session(p, ScreenConfig::tablet(), m, 43).records, a.records);
}

TEST(Synth, Cohort) {
  const auto c = synth_cohort(Platform::desktop, {Condition::UD50, Condition::UD80}, 3, 7);
  ASSERT_EQ(c.size(), 6u);
  for (const auto &s : c) {
    EXPECT_EQ(s.meta.platform, Platform::desktop);
    EXPECT_FALSE(s.meta.participant_id.empty());
    EXPECT_NO_THROW(compute_errors(s));
  }
  EXPECT_EQ(synth_cohort(Platform::desktop, {Condition::UD50}, 2, 7)[1].records,
            synth_cohort(Platform::desktop, {Condition::UD50}, 2, 7)[1].records);
}

TEST(Synth, RejectsNegativeProfile) {
  ConditionProfile p;
  p.mean_error = -1.0;
  EXPECT_THROW(synth_session(p, ScreenConfig::desktop(), meta_for(Condition::UD50), 0),
               UsageError);
  EXPECT_EQ(parse_spatial_mode("Radial"), SpatialMode::radial);
}
