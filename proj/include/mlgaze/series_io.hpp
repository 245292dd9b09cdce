// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_SERIES_IO_HPP
#define MLGAZE_SERIES_IO_HPP

#include "mlgaze/geometry.hpp"

#include <filesystem>
#include <string>

namespace mlgaze {

/// An error series together with the session it came from.
///
/// CSV layout: `# key=value` lines for participant_id, platform, condition,
/// user_distance_mm and optionally augmented_by, then the header row
/// `timestamp_ms,aoi_id,frontal_err,yaw_err,pitch_err`.
struct ErrorRecording {
  SessionMeta meta;
  ErrorSeries errors;
  std::string augmented_by; ///< empty for unaugmented data
};

std::string format_error_recording(const ErrorRecording &rec);
ErrorRecording parse_error_recording(std::string_view text);

void save_error_recording(const ErrorRecording &rec,
                          const std::filesystem::path &path);
ErrorRecording load_error_recording(const std::filesystem::path &path);

} // namespace mlgaze

#endif // MLGAZE_SERIES_IO_HPP
