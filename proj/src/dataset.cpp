// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/dataset.hpp"

#include "mlgaze/error.hpp"
#include "mlgaze/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace mlgaze {

namespace {

constexpr double kMmPerInch = 25.4;
constexpr double kGridTolerancePx = 1.0;

struct ConditionName {
  Condition condition;
  std::string_view name;
};

constexpr std::array<ConditionName, 11> kConditionNames = {{
    {Condition::UD50, "UD50"},
    {Condition::UD60, "UD60"},
    {Condition::UD70, "UD70"},
    {Condition::UD80, "UD80"},
    {Condition::HeadRoll20, "HeadRoll20"},
    {Condition::HeadPitch20, "HeadPitch20"},
    {Condition::HeadYaw20, "HeadYaw20"},
    {Condition::PlatRoll20, "PlatRoll20"},
    {Condition::PlatPitch20, "PlatPitch20"},
    {Condition::PlatYaw20, "PlatYaw20"},
    {Condition::Neutral, "Neutral"},
}};

std::string normalize_name(std::string_view s) {
  std::string out;
  for (char c : text::trim(s))
    if (c != '_' && c != '-' && c != ' ')
      out.push_back(c);
  return text::lower(out);
}

std::optional<double> parse_coordinate(std::string_view field) {
  field = text::trim(field);
  if (field.empty() || text::lower(field) == "nan")
    return std::nullopt;
  auto v = text::parse_double(field);
  if (!v || !std::isfinite(*v))
    throw DataError("bad coordinate '" + std::string(field) + "'");
  return v;
}

std::string format_coordinate(const std::optional<double> &v) {
  return v ? text::format_double(*v) : std::string("NaN");
}

} // namespace

ScreenConfig ScreenConfig::from_diagonal(int width_px, int height_px,
                                         double diagonal_mm) {
  ScreenConfig s;
  s.width_px = width_px;
  s.height_px = height_px;
  s.diagonal_mm = diagonal_mm;
  const double diag_px = std::hypot(static_cast<double>(width_px),
                                    static_cast<double>(height_px));
  s.pixel_pitch_mm = diag_px > 0.0 ? diagonal_mm / diag_px : 0.0;
  s.origin = s.center();
  return s;
}

ScreenConfig ScreenConfig::desktop() {
  return from_diagonal(1680, 1050, 22.0 * kMmPerInch);
}

ScreenConfig ScreenConfig::tablet() {
  return from_diagonal(1920, 800, 10.1 * kMmPerInch);
}

void ScreenConfig::validate() const {
  if (width_px <= 0 || height_px <= 0)
    throw UsageError("screen dimensions must be positive");
  if (!(pixel_pitch_mm > 0.0) || !std::isfinite(pixel_pitch_mm))
    throw UsageError("pixel pitch must be positive");
}

std::string_view to_string(Condition c) {
  for (const auto &cn : kConditionNames)
    if (cn.condition == c)
      return cn.name;
  return "?";
}

std::string_view to_string(Platform p) {
  return p == Platform::desktop ? "desktop" : "tablet";
}

std::optional<Condition> parse_condition(std::string_view text) {
  const auto key = normalize_name(text);
  for (const auto &cn : kConditionNames)
    if (normalize_name(cn.name) == key)
      return cn.condition;
  return std::nullopt;
}

std::optional<Platform> parse_platform(std::string_view text) {
  const auto key = normalize_name(text);
  if (key == "desktop")
    return Platform::desktop;
  if (key == "tablet")
    return Platform::tablet;
  return std::nullopt;
}

double nominal_distance_mm(Condition c) {
  switch (c) {
  case Condition::UD50:
    return 500.0;
  case Condition::UD70:
    return 700.0;
  case Condition::UD80:
    return 800.0;
  default:
    return 600.0;
  }
}

AoiGrid make_aoi_grid(const ScreenConfig &screen, double margin_frac) {
  if (!(margin_frac >= 0.0 && margin_frac < 0.5))
    throw UsageError("AOI margin must lie in [0, 0.5)");
  screen.validate();
  const double w = screen.width_px;
  const double h = screen.height_px;
  const double x0 = margin_frac * w;
  const double y0 = margin_frac * h;
  const double dx = (1.0 - 2.0 * margin_frac) * w / (kAoiColumns - 1);
  const double dy = (1.0 - 2.0 * margin_frac) * h / (kAoiRows - 1);

  AoiGrid grid{};
  for (int r = 0; r < kAoiRows; ++r) {
    for (int c = 0; c < kAoiColumns; ++c) {
      Point p{x0 + c * dx, y0 + r * dy};
      p.x = std::clamp(p.x, 0.0, w - 1.0);
      p.y = std::clamp(p.y, 0.0, h - 1.0);
      grid[static_cast<std::size_t>(r * kAoiColumns + c)] = p;
    }
  }
  return grid;
}

int aoi_after_hflip(int aoi_id) {
  if (aoi_id < 1 || aoi_id > kAoiCount)
    throw UsageError("AOI id out of range");
  const int row = (aoi_id - 1) / kAoiColumns;
  const int col = (aoi_id - 1) % kAoiColumns;
  return (kAoiRows - 1 - row) * kAoiColumns + col + 1;
}

int aoi_after_vflip(int aoi_id) {
  if (aoi_id < 1 || aoi_id > kAoiCount)
    throw UsageError("AOI id out of range");
  const int row = (aoi_id - 1) / kAoiColumns;
  const int col = (aoi_id - 1) % kAoiColumns;
  return row * kAoiColumns + (kAoiColumns - 1 - col) + 1;
}

void validate_session(const GazeSession &session) {
  const auto &recs = session.records;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto &r = recs[i];
    if (r.aoi_id < 1 || r.aoi_id > kAoiCount)
      throw DataError("row " + std::to_string(i + 1) + ": unknown aoi_id " +
                      std::to_string(r.aoi_id));
    if (i > 0 && r.timestamp_ms < recs[i - 1].timestamp_ms)
      throw DataError("row " + std::to_string(i + 1) +
                      ": timestamps must be non-decreasing");
    const Point &g = session.aoi_grid[static_cast<std::size_t>(r.aoi_id - 1)];
    if (std::abs(g.x - r.gt_x) > kGridTolerancePx ||
        std::abs(g.y - r.gt_y) > kGridTolerancePx)
      throw DataError("row " + std::to_string(i + 1) + ": ground truth (" +
                      text::format_double(r.gt_x) + "," +
                      text::format_double(r.gt_y) +
                      ") does not match AOI " + std::to_string(r.aoi_id));
  }
}

GazeSession parse_session(std::string_view content) {
  std::map<std::string, std::string, std::less<>> header;
  GazeSession session;
  bool saw_columns = false;
  std::size_t data_row = 0;

  for (auto raw : text::lines(content)) {
    const auto line = text::trim(raw);
    if (line.empty())
      continue;
    if (line.front() == '#') {
      auto body = text::trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string_view::npos)
        header[std::string(text::trim(body.substr(0, eq)))] =
            std::string(text::trim(body.substr(eq + 1)));
      continue;
    }
    if (!saw_columns) {
      if (line != "timestamp_ms,left_x,left_y,right_x,right_y,aoi_id,gt_x,gt_y")
        throw DataError("unexpected column header: " + std::string(line));
      saw_columns = true;
      continue;
    }
    ++data_row;
    const auto row_tag = "row " + std::to_string(data_row);
    const auto fields = text::split(line, ',');
    if (fields.size() != 8)
      throw DataError(row_tag + ": expected 8 fields, got " +
                      std::to_string(fields.size()));
    GazeRecord rec;
    try {
      const auto ts = text::parse_int(fields[0]);
      if (!ts)
        throw DataError("bad timestamp");
      rec.timestamp_ms = *ts;
      rec.left_x = parse_coordinate(fields[1]);
      rec.left_y = parse_coordinate(fields[2]);
      rec.right_x = parse_coordinate(fields[3]);
      rec.right_y = parse_coordinate(fields[4]);
      const auto aoi = text::parse_int(fields[5]);
      if (!aoi)
        throw DataError("bad aoi_id");
      if (*aoi < 1 || *aoi > kAoiCount)
        throw DataError("unknown aoi_id " + std::to_string(*aoi));
      rec.aoi_id = static_cast<int>(*aoi);
      const auto gx = text::parse_double(fields[6]);
      const auto gy = text::parse_double(fields[7]);
      if (!gx || !gy || !std::isfinite(*gx) || !std::isfinite(*gy))
        throw DataError("bad ground-truth coordinate");
      rec.gt_x = *gx;
      rec.gt_y = *gy;
    } catch (const DataError &e) {
      throw DataError(row_tag + ": " + e.what());
    }
    session.records.push_back(rec);
  }
  if (!saw_columns)
    throw DataError("missing column header row");

  auto need = [&](std::string_view key) -> const std::string & {
    auto it = header.find(key);
    if (it == header.end())
      throw DataError("missing header key '" + std::string(key) + "'");
    return it->second;
  };
  auto need_number = [&](std::string_view key) {
    auto v = text::parse_double(need(key));
    if (!v)
      throw DataError("header key '" + std::string(key) + "' is not numeric");
    return *v;
  };

  session.meta.participant_id = need("participant_id");
  auto platform = parse_platform(need("platform"));
  if (!platform)
    throw DataError("unknown platform '" + need("platform") + "'");
  session.meta.platform = *platform;
  auto condition = parse_condition(need("condition"));
  if (!condition)
    throw DataError("unknown condition '" + need("condition") + "'");
  session.meta.condition = *condition;
  session.meta.user_distance_mm = need_number("user_distance_mm");
  if (!(session.meta.user_distance_mm > 0.0))
    throw DataError("user_distance_mm must be positive");

  session.screen = ScreenConfig::from_diagonal(
      static_cast<int>(need_number("screen_width_px")),
      static_cast<int>(need_number("screen_height_px")),
      need_number("screen_diagonal_mm"));
  try {
    session.screen.validate();
  } catch (const UsageError &e) {
    throw DataError(e.what());
  }

  // Grid positions come from the data where an AOI was visited, otherwise
  // from the default layout.
  session.aoi_grid = make_aoi_grid(session.screen);
  std::array<bool, kAoiCount> seen{};
  for (const auto &r : session.records) {
    auto idx = static_cast<std::size_t>(r.aoi_id - 1);
    if (!seen[idx]) {
      session.aoi_grid[idx] = {r.gt_x, r.gt_y};
      seen[idx] = true;
    }
  }
  validate_session(session);
  return session;
}

GazeSession load_session(const std::filesystem::path &path) {
  return parse_session(text::read_file(path));
}

GazeSession load_session(const std::filesystem::path &path,
                         const ScreenConfig &screen, const SessionMeta &meta) {
  screen.validate();
  auto s = load_session(path);
  s.screen = screen;
  s.meta = meta;
  return s;
}

std::string format_session(const GazeSession &session) {
  std::ostringstream out;
  const auto &m = session.meta;
  const auto &sc = session.screen;
  out << "# participant_id=" << m.participant_id << '\n'
      << "# platform=" << to_string(m.platform) << '\n'
      << "# condition=" << to_string(m.condition) << '\n'
      << "# user_distance_mm=" << text::format_double(m.user_distance_mm)
      << '\n'
      << "# screen_width_px=" << sc.width_px << '\n'
      << "# screen_height_px=" << sc.height_px << '\n'
      << "# screen_diagonal_mm=" << text::format_double(sc.diagonal_mm)
      << '\n'
      << "timestamp_ms,left_x,left_y,right_x,right_y,aoi_id,gt_x,gt_y\n";
  for (const auto &r : session.records) {
    out << r.timestamp_ms << ',' << format_coordinate(r.left_x) << ','
        << format_coordinate(r.left_y) << ',' << format_coordinate(r.right_x)
        << ',' << format_coordinate(r.right_y) << ',' << r.aoi_id << ','
        << text::format_double(r.gt_x) << ',' << text::format_double(r.gt_y)
        << '\n';
  }
  return out.str();
}

void save_session(const GazeSession &session,
                  const std::filesystem::path &path) {
  text::write_file(path, format_session(session));
}

GazeSession fill_missing(const GazeSession &session) {
  using Field = std::optional<double> GazeRecord::*;
  constexpr std::array<Field, 4> channels = {
      &GazeRecord::left_x, &GazeRecord::left_y, &GazeRecord::right_x,
      &GazeRecord::right_y};
  constexpr std::array<std::string_view, 4> names = {"left_x", "left_y",
                                                      "right_x", "right_y"};

  GazeSession out = session;
  auto &recs = out.records;

  for (std::size_t c = 0; c < channels.size(); ++c) {
    const Field f = channels[c];
    double total = 0.0;
    std::size_t count = 0;
    for (const auto &r : recs)
      if (r.*f) {
        total += *(r.*f);
        ++count;
      }
    bool any_missing = count != recs.size();
    if (!any_missing)
      continue;
    if (count == 0)
      throw DataError("channel " + std::string(names[c]) +
                      " has no values to substitute from");
    const double session_mean = total / static_cast<double>(count);

    std::size_t begin = 0;
    while (begin < recs.size()) {
      std::size_t end = begin;
      while (end < recs.size() && recs[end].aoi_id == recs[begin].aoi_id)
        ++end;
      double seg_total = 0.0;
      std::size_t seg_count = 0;
      for (std::size_t i = begin; i < end; ++i)
        if (recs[i].*f) {
          seg_total += *(recs[i].*f);
          ++seg_count;
        }
      const double fill = seg_count > 0
                              ? seg_total / static_cast<double>(seg_count)
                              : session_mean;
      for (std::size_t i = begin; i < end; ++i)
        if (!(recs[i].*f))
          recs[i].*f = fill;
      begin = end;
    }
  }
  return out;
}

} // namespace mlgaze
