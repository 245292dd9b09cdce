// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/synth.hpp"

#include "mlgaze/augment.hpp"
#include "mlgaze/error.hpp"
#include "mlgaze/geometry.hpp"
#include "mlgaze/rng.hpp"
#include "mlgaze/text.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mlgaze {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
// MAD of a unit normal.
constexpr double kNormalMad = 0.6744897501960817;

struct Stats {
  double mean;
  double mad;
};

Stats desktop_stats(Condition c) {
  switch (c) {
  case Condition::UD50:
    return {3.37, 3.49};
  case Condition::UD70:
    return {1.21, 0.82};
  case Condition::UD80:
    return {1.02, 0.66};
  case Condition::HeadRoll20:
    return {3.7, 3.63};
  case Condition::HeadYaw20:
    return {8.51, 10.0};
  case Condition::HeadPitch20:
    return {3.15, 1.90};
  default:
    return {2.04, 1.77};
  }
}

Stats tablet_stats(Condition c) {
  switch (c) {
  case Condition::UD50:
    return {2.68, 0.38};
  case Condition::UD70:
    return {0.59, 0.29};
  case Condition::UD80:
    return {1.55, 0.24};
  case Condition::PlatRoll20:
    return {7.74, 0.77};
  case Condition::PlatYaw20:
    return {4.25, 0.60};
  case Condition::PlatPitch20:
    return {2.45, 0.46};
  default:
    return {2.46, 0.42};
  }
}

bool is_head_pose(Condition c) {
  return c == Condition::HeadRoll20 || c == Condition::HeadPitch20 ||
         c == Condition::HeadYaw20;
}

bool is_platform_pose(Condition c) {
  return c == Condition::PlatRoll20 || c == Condition::PlatPitch20 ||
         c == Condition::PlatYaw20;
}

SpatialMode default_mode(Condition c) {
  switch (c) {
  case Condition::HeadYaw20:
  case Condition::PlatYaw20:
    return SpatialMode::yaw_skewed;
  case Condition::HeadPitch20:
  case Condition::PlatPitch20:
    return SpatialMode::pitch_skewed;
  case Condition::Neutral:
  case Condition::UD60:
    return SpatialMode::uniform;
  default:
    return SpatialMode::radial;
  }
}

} // namespace

std::string_view to_string(SpatialMode m) {
  switch (m) {
  case SpatialMode::uniform:
    return "uniform";
  case SpatialMode::yaw_skewed:
    return "yaw_skewed";
  case SpatialMode::pitch_skewed:
    return "pitch_skewed";
  case SpatialMode::radial:
    return "radial";
  }
  return "?";
}

std::optional<SpatialMode> parse_spatial_mode(std::string_view t) {
  const auto s = text::lower(text::trim(t));
  for (auto m : {SpatialMode::uniform, SpatialMode::yaw_skewed,
                 SpatialMode::pitch_skewed, SpatialMode::radial})
    if (s == to_string(m))
      return m;
  return std::nullopt;
}

void ConditionProfile::validate() const {
  if (!(mean_error >= 0.0) || !(mad >= 0.0))
    throw UsageError("profile mean and MAD must be >= 0");
}

ConditionProfile default_profile(Platform platform, Condition condition) {
  const bool tablet_values =
      is_platform_pose(condition) ||
      (platform == Platform::tablet && !is_head_pose(condition));
  const auto s = tablet_values ? tablet_stats(condition) : desktop_stats(condition);
  return {condition, s.mean, s.mad, default_mode(condition)};
}

GazeSession synth_session(const ConditionProfile &profile,
                          const ScreenConfig &screen, const SessionMeta &meta,
                          std::uint64_t seed, const SynthOptions &opts) {
  profile.validate();
  screen.validate();
  if (opts.samples_per_aoi < 1)
    throw UsageError("samples per AOI must be >= 1");
  if (!(meta.user_distance_mm > 0.0))
    throw UsageError("user distance must be positive");

  GazeSession s;
  s.meta = meta;
  s.screen = screen;
  s.aoi_grid = make_aoi_grid(screen, opts.margin_frac);
  const double z = meta.user_distance_mm;

  std::vector<AngleSample> gt;
  std::vector<Point> rel;
  for (const auto &p : s.aoi_grid) {
    rel.push_back(relative_to_origin(p, screen));
    gt.push_back(gt_angles(rel.back(), screen, z));
  }

  // Zero-mean spatial shape in [-1, 1] per AOI.
  std::vector<double> shape(kAoiCount, 0.0);
  auto normalize = [&](auto value) {
    double hi = 0.0;
    for (std::size_t a = 0; a < gt.size(); ++a)
      hi = std::max(hi, std::abs(value(gt[a])));
    if (hi > 0.0)
      for (std::size_t a = 0; a < gt.size(); ++a)
        shape[a] = value(gt[a]) / hi;
  };
  switch (profile.mode) {
  case SpatialMode::uniform:
    break;
  case SpatialMode::yaw_skewed:
    normalize([](const AngleSample &g) { return g.theta_yaw; });
    break;
  case SpatialMode::pitch_skewed:
    normalize([](const AngleSample &g) { return g.theta_pitch; });
    break;
  case SpatialMode::radial: {
    normalize([](const AngleSample &g) { return g.theta_gaze; });
    double mean = 0.0;
    for (double v : shape)
      mean += v / kAoiCount;
    for (auto &v : shape)
      v = 2.0 * (v - mean);
    break;
  }
  }

  const double spatial_sd = [&] {
    double m2 = 0.0;
    for (double v : shape)
      m2 += v * v / kAoiCount;
    return profile.mean_error * opts.gradient * std::sqrt(m2);
  }();
  const double total_sd = profile.mad / kNormalMad;
  const double noise_sd =
      std::sqrt(std::max(total_sd * total_sd - spatial_sd * spatial_sd, 0.0));

  Rng rng(seed);
  std::uniform_real_distribution<double> gain_dist(1.0 - opts.multiplier_spread,
                                                   1.0 + opts.multiplier_spread);
  const double gain = gain_dist(rng);
  std::uniform_real_distribution<double> angle_dist(0.0, 2.0 * std::numbers::pi);
  const double center_dir = angle_dist(rng);
  std::normal_distribution<double> unit(0.0, 1.0);

  const auto n = static_cast<std::size_t>(kAoiCount) *
                 static_cast<std::size_t>(opts.samples_per_aoi);
  const double jitter_sd = opts.jitter_frac * noise_sd;
  std::vector<double> jitter(n, 0.0);
  if (jitter_sd > 0.0 && n >= 8)
    jitter = pink_noise(n, 0.8, jitter_sd, derive_seed(seed, 1));

  const double mu = screen.pixel_pitch_mm;
  std::size_t k = 0;
  for (int a = 0; a < kAoiCount; ++a) {
    const auto ai = static_cast<std::size_t>(a);
    const bool at_origin = rel[ai].x == 0.0 && rel[ai].y == 0.0;
    const double dir = at_origin ? center_dir : std::atan2(rel[ai].y, rel[ai].x);
    const double base = profile.mean_error * (1.0 + opts.gradient * shape[ai]);
    for (int j = 0; j < opts.samples_per_aoi; ++j, ++k) {
      const double e = gain * (base + noise_sd * unit(rng)) + jitter[k];
      double theta = gt[ai].theta_gaze + e;
      double d = dir;
      if (theta < 0.0) {
        theta = -theta;
        d += std::numbers::pi;
      }
      theta = std::min(theta, 80.0);
      const double r_px = z * std::tan(theta * kDegToRad) / mu;
      const Point p{screen.origin.x + r_px * std::cos(d),
                    screen.origin.y + r_px * std::sin(d)};
      GazeRecord rec;
      rec.timestamp_ms = static_cast<std::int64_t>(k) * opts.sample_period_ms;
      rec.left_x = p.x;
      rec.right_x = p.x;
      rec.left_y = p.y;
      rec.right_y = p.y;
      rec.aoi_id = a + 1;
      rec.gt_x = s.aoi_grid[ai].x;
      rec.gt_y = s.aoi_grid[ai].y;
      s.records.push_back(rec);
    }
  }
  return s;
}

std::vector<GazeSession> synth_cohort(Platform platform,
                                      const std::vector<Condition> &conditions,
                                      int participants, std::uint64_t seed,
                                      const SynthOptions &opts) {
  if (participants < 1)
    throw UsageError("need at least one participant");
  const auto screen =
      platform == Platform::desktop ? ScreenConfig::desktop() : ScreenConfig::tablet();
  std::vector<GazeSession> out;
  for (int p = 0; p < participants; ++p) {
    for (auto c : conditions) {
      SessionMeta meta;
      meta.participant_id = (p + 1 < 10 ? "P0" : "P") + std::to_string(p + 1);
      meta.platform = platform;
      meta.condition = c;
      meta.user_distance_mm = nominal_distance_mm(c);
      const auto unit = static_cast<std::uint64_t>(p) * 64 +
                        static_cast<std::uint64_t>(c);
      out.push_back(synth_session(default_profile(platform, c), screen, meta,
                                  derive_seed(seed, unit), opts));
    }
  }
  return out;
}

} // namespace mlgaze
