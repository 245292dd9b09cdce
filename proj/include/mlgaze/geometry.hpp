// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_GEOMETRY_HPP
#define MLGAZE_GEOMETRY_HPP

#include "mlgaze/dataset.hpp"

#include <cstdint>
#include <vector>

namespace mlgaze {

/// Frontal, yaw and pitch angles of a screen point seen from distance z.
/// All angles are in degrees.
struct AngleSample {
  double theta_gaze = 0.0;
  double theta_yaw = 0.0;
  double theta_pitch = 0.0;
  std::int64_t timestamp_ms = 0;
};

enum class ErrorChannel { frontal = 0, yaw = 1, pitch = 2 };

inline constexpr std::array<ErrorChannel, 3> kErrorChannels = {
    ErrorChannel::frontal, ErrorChannel::yaw, ErrorChannel::pitch};

std::string_view to_string(ErrorChannel c);

/// Per-sample angular errors in degrees (estimate minus ground truth).
struct ErrorSeries {
  std::vector<double> frontal_err;
  std::vector<double> yaw_err;
  std::vector<double> pitch_err;
  std::vector<int> aoi_ids;
  std::vector<std::int64_t> timestamps;

  std::size_t size() const { return aoi_ids.size(); }
  bool empty() const { return aoi_ids.empty(); }

  std::vector<double> &channel(ErrorChannel c);
  const std::vector<double> &channel(ErrorChannel c) const;

  /// Throws DataError unless all lists share one length.
  void validate() const;
};

/// Binocular midpoint re-expressed relative to the screen origin.
Point binocular_average(const GazeRecord &record, const ScreenConfig &screen);

/// Angles of a point already expressed relative to the screen origin.
AngleSample to_angles(Point p, const ScreenConfig &screen, double z_mm);

/// Ground-truth angles of an AOI target, relative to the screen origin.
AngleSample gt_angles(Point aoi_point, const ScreenConfig &screen,
                      double z_mm);

/// Raw screen pixel position re-expressed relative to the screen origin.
Point relative_to_origin(Point raw, const ScreenConfig &screen);

/// Estimated gaze angles for every record of a cleaned session.
std::vector<AngleSample> compute_gaze_angles(const GazeSession &session);

ErrorSeries compute_errors(const GazeSession &session);

} // namespace mlgaze

#endif // MLGAZE_GEOMETRY_HPP
