// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_DATASET_HPP
#define MLGAZE_DATASET_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlgaze {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point &, const Point &) = default;
};

inline constexpr int kAoiCount = 15;
inline constexpr int kAoiColumns = 5;
inline constexpr int kAoiRows = 3;

/// Physical description of the display the gaze was tracked on.
///
/// `origin` is the pixel position that gaze and AOI coordinates are
/// re-expressed against before any angle math; it is the screen center
/// unless stated otherwise.
struct ScreenConfig {
  int width_px = 0;
  int height_px = 0;
  double diagonal_mm = 0.0;
  double pixel_pitch_mm = 0.0; ///< mm per pixel
  Point origin{};

  /// Pixel pitch derived from the diagonal, origin at the screen center.
  static ScreenConfig from_diagonal(int width_px, int height_px,
                                    double diagonal_mm);

  static ScreenConfig desktop(); ///< 22" 1680x1050
  static ScreenConfig tablet();  ///< 10.1" 1920x800

  Point center() const { return {width_px / 2.0, height_px / 2.0}; }

  /// Throws UsageError when dimensions or pitch are not positive.
  void validate() const;
};

enum class Platform { desktop, tablet };

enum class Condition {
  UD50,
  UD60,
  UD70,
  UD80,
  HeadRoll20,
  HeadPitch20,
  HeadYaw20,
  PlatRoll20,
  PlatPitch20,
  PlatYaw20,
  Neutral,
};

inline constexpr std::array<Condition, 11> kAllConditions = {
    Condition::UD50,        Condition::UD60,       Condition::UD70,
    Condition::UD80,        Condition::HeadRoll20, Condition::HeadPitch20,
    Condition::HeadYaw20,   Condition::PlatRoll20, Condition::PlatPitch20,
    Condition::PlatYaw20,   Condition::Neutral};

std::string_view to_string(Condition c);
std::string_view to_string(Platform p);

/// Case-insensitive, ignores '_' and '-': "head_roll20" == "HeadRoll20".
std::optional<Condition> parse_condition(std::string_view text);
std::optional<Platform> parse_platform(std::string_view text);

/// Nominal user distance of a condition (mm); pose conditions sit at 600.
double nominal_distance_mm(Condition c);

struct SessionMeta {
  std::string participant_id;
  Platform platform = Platform::desktop;
  Condition condition = Condition::Neutral;
  double user_distance_mm = 600.0;
};

struct GazeRecord {
  std::int64_t timestamp_ms = 0;
  std::optional<double> left_x, left_y, right_x, right_y;
  int aoi_id = 1; ///< 1..15
  double gt_x = 0.0;
  double gt_y = 0.0;

  bool complete() const { return left_x && left_y && right_x && right_y; }

  friend bool operator==(const GazeRecord &, const GazeRecord &) = default;
};

using AoiGrid = std::array<Point, kAoiCount>;

struct GazeSession {
  SessionMeta meta;
  ScreenConfig screen;
  std::vector<GazeRecord> records;
  AoiGrid aoi_grid{};
};

/// 5 columns x 3 rows of targets inside `margin_frac` of each screen edge,
/// row-major: AOI 1 top-left, AOI 8 center, AOI 15 bottom-right.
AoiGrid make_aoi_grid(const ScreenConfig &screen, double margin_frac = 0.1);

/// AOI that takes the place of `aoi_id` when the top and bottom rows swap.
int aoi_after_hflip(int aoi_id);
/// AOI that takes the place of `aoi_id` when the left and right columns swap.
int aoi_after_vflip(int aoi_id);

/// Reads a canonical session CSV. Screen and meta come from the `# key=value`
/// header lines.
GazeSession load_session(const std::filesystem::path &path);

/// Same, but `screen` and `meta` override whatever the file header says.
GazeSession load_session(const std::filesystem::path &path,
                         const ScreenConfig &screen, const SessionMeta &meta);

GazeSession parse_session(std::string_view text);

std::string format_session(const GazeSession &session);
void save_session(const GazeSession &session,
                  const std::filesystem::path &path);

/// Mean substitution of missing coordinates, per AOI segment with a
/// whole-session fallback. The input is left untouched.
GazeSession fill_missing(const GazeSession &session);

/// Checks ordering and AOI ids; throws DataError on the first violation.
void validate_session(const GazeSession &session);

} // namespace mlgaze

#endif // MLGAZE_DATASET_HPP
