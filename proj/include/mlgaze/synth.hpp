// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_SYNTH_HPP
#define MLGAZE_SYNTH_HPP

#include "mlgaze/dataset.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace mlgaze {

enum class SpatialMode { uniform, yaw_skewed, pitch_skewed, radial };

std::string_view to_string(SpatialMode m);
std::optional<SpatialMode> parse_spatial_mode(std::string_view text);

struct ConditionProfile {
  Condition condition = Condition::Neutral;
  double mean_error = 0.0; ///< target mean frontal error, deg
  double mad = 0.0;        ///< target median absolute deviation, deg
  SpatialMode mode = SpatialMode::uniform;

  /// Throws UsageError on a negative mean or MAD.
  void validate() const;
};

/// Calibrated to the published desktop and tablet error statistics.
/// Head-pose conditions on a tablet borrow the desktop values and platform
/// poses on a desktop borrow the tablet values.
ConditionProfile default_profile(Platform platform, Condition condition);

struct SynthOptions {
  int samples_per_aoi = 41;
  int sample_period_ms = 33;
  double gradient = 0.5;          ///< relative error swing across the screen
  double jitter_frac = 0.1;       ///< pink jitter sd as a share of the noise sd
  double multiplier_spread = 0.15; ///< session gain drawn from 1 +- spread
  double margin_frac = 0.1;
};

/// Dwell segments over AOIs 1..15 in order. Each sample's frontal error is
/// gain * (mean * (1 + gradient * shape(AOI)) + noise) plus pink jitter; the
/// gaze point sits on the ray through the target at that angular offset.
GazeSession synth_session(const ConditionProfile &profile,
                          const ScreenConfig &screen, const SessionMeta &meta,
                          std::uint64_t seed, const SynthOptions &opts = {});

/// One session per participant and condition, participants named P01, P02, ...
std::vector<GazeSession> synth_cohort(Platform platform,
                                      const std::vector<Condition> &conditions,
                                      int participants, std::uint64_t seed,
                                      const SynthOptions &opts = {});

} // namespace mlgaze

#endif // MLGAZE_SYNTH_HPP
