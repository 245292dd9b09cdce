// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/geometry.hpp"

#include "mlgaze/error.hpp"

#include <cmath>
#include <numbers>

namespace mlgaze {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

} // namespace

std::string_view to_string(ErrorChannel c) {
  switch (c) {
  case ErrorChannel::frontal:
    return "frontal";
  case ErrorChannel::yaw:
    return "yaw";
  case ErrorChannel::pitch:
    return "pitch";
  }
  return "?";
}

std::vector<double> &ErrorSeries::channel(ErrorChannel c) {
  switch (c) {
  case ErrorChannel::yaw:
    return yaw_err;
  case ErrorChannel::pitch:
    return pitch_err;
  default:
    return frontal_err;
  }
}

const std::vector<double> &ErrorSeries::channel(ErrorChannel c) const {
  return const_cast<ErrorSeries *>(this)->channel(c);
}

void ErrorSeries::validate() const {
  const auto n = aoi_ids.size();
  if (frontal_err.size() != n || yaw_err.size() != n ||
      pitch_err.size() != n || timestamps.size() != n)
    throw DataError("error series lists differ in length");
}

Point relative_to_origin(Point raw, const ScreenConfig &screen) {
  return {raw.x - screen.origin.x, raw.y - screen.origin.y};
}

Point binocular_average(const GazeRecord &record, const ScreenConfig &screen) {
  if (!record.complete())
    throw DataError("binocular average needs both eyes; fill missing values "
                    "first");
  const Point mid{(*record.left_x + *record.right_x) / 2.0,
                  (*record.left_y + *record.right_y) / 2.0};
  return relative_to_origin(mid, screen);
}

AngleSample to_angles(Point p, const ScreenConfig &screen, double z_mm) {
  if (!(z_mm > 0.0))
    throw UsageError("user distance must be positive");
  const double mu = screen.pixel_pitch_mm;
  const double osd = mu * std::sqrt(p.x * p.x + p.y * p.y);
  AngleSample a;
  a.theta_gaze = std::atan(osd / z_mm) * kRadToDeg;
  a.theta_yaw = std::atan(mu * p.x / z_mm) * kRadToDeg;
  a.theta_pitch = std::atan(mu * p.y / z_mm) * kRadToDeg;
  return a;
}

AngleSample gt_angles(Point aoi_point, const ScreenConfig &screen,
                      double z_mm) {
  return to_angles(aoi_point, screen, z_mm);
}

std::vector<AngleSample> compute_gaze_angles(const GazeSession &session) {
  const double z = session.meta.user_distance_mm;
  std::vector<AngleSample> out;
  out.reserve(session.records.size());
  for (const auto &r : session.records) {
    auto a = to_angles(binocular_average(r, session.screen), session.screen, z);
    a.timestamp_ms = r.timestamp_ms;
    out.push_back(a);
  }
  return out;
}

ErrorSeries compute_errors(const GazeSession &session) {
  if (session.records.empty())
    throw DataError("cannot compute errors of an empty session");
  const double z = session.meta.user_distance_mm;

  ErrorSeries e;
  const auto n = session.records.size();
  e.frontal_err.reserve(n);
  e.yaw_err.reserve(n);
  e.pitch_err.reserve(n);
  e.aoi_ids.reserve(n);
  e.timestamps.reserve(n);
  for (const auto &r : session.records) {
    const auto g =
        to_angles(binocular_average(r, session.screen), session.screen, z);
    const auto t = gt_angles(relative_to_origin({r.gt_x, r.gt_y}, session.screen),
                             session.screen, z);
    e.frontal_err.push_back(g.theta_gaze - t.theta_gaze);
    e.yaw_err.push_back(g.theta_yaw - t.theta_yaw);
    e.pitch_err.push_back(g.theta_pitch - t.theta_pitch);
    e.aoi_ids.push_back(r.aoi_id);
    e.timestamps.push_back(r.timestamp_ms);
  }
  return e;
}

} // namespace mlgaze
