// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/series_io.hpp"

#include "mlgaze/error.hpp"
#include "mlgaze/text.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace mlgaze {

namespace {
constexpr std::string_view kColumns =
    "timestamp_ms,aoi_id,frontal_err,yaw_err,pitch_err";
}

std::string format_error_recording(const ErrorRecording &rec) {
  rec.errors.validate();
  std::ostringstream out;
  out << "# participant_id=" << rec.meta.participant_id << '\n'
      << "# platform=" << to_string(rec.meta.platform) << '\n'
      << "# condition=" << to_string(rec.meta.condition) << '\n'
      << "# user_distance_mm=" << text::format_double(rec.meta.user_distance_mm)
      << '\n';
  if (!rec.augmented_by.empty())
    out << "# augmented_by=" << rec.augmented_by << '\n';
  out << kColumns << '\n';
  const auto &e = rec.errors;
  for (std::size_t i = 0; i < e.size(); ++i)
    out << e.timestamps[i] << ',' << e.aoi_ids[i] << ','
        << text::format_double(e.frontal_err[i]) << ','
        << text::format_double(e.yaw_err[i]) << ','
        << text::format_double(e.pitch_err[i]) << '\n';
  return out.str();
}

ErrorRecording parse_error_recording(std::string_view content) {
  std::map<std::string, std::string, std::less<>> header;
  ErrorRecording rec;
  bool saw_columns = false;
  std::size_t row = 0;
  for (auto raw : text::lines(content)) {
    const auto line = text::trim(raw);
    if (line.empty())
      continue;
    if (line.front() == '#') {
      const auto body = text::trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string_view::npos)
        header[std::string(text::trim(body.substr(0, eq)))] =
            std::string(text::trim(body.substr(eq + 1)));
      continue;
    }
    if (!saw_columns) {
      if (line != kColumns)
        throw DataError("unexpected error-series header: " + std::string(line));
      saw_columns = true;
      continue;
    }
    ++row;
    const auto f = text::split(line, ',');
    const auto tag = "row " + std::to_string(row);
    if (f.size() != 5)
      throw DataError(tag + ": expected 5 fields");
    const auto ts = text::parse_int(f[0]);
    const auto aoi = text::parse_int(f[1]);
    const auto fe = text::parse_double(f[2]);
    const auto ye = text::parse_double(f[3]);
    const auto pe = text::parse_double(f[4]);
    if (!ts || !aoi || !fe || !ye || !pe)
      throw DataError(tag + ": malformed field");
    if (*aoi < 1 || *aoi > kAoiCount)
      throw DataError(tag + ": unknown aoi_id " + std::to_string(*aoi));
    if (!std::isfinite(*fe) || !std::isfinite(*ye) || !std::isfinite(*pe))
      throw DataError(tag + ": non-finite error value");
    rec.errors.timestamps.push_back(*ts);
    rec.errors.aoi_ids.push_back(static_cast<int>(*aoi));
    rec.errors.frontal_err.push_back(*fe);
    rec.errors.yaw_err.push_back(*ye);
    rec.errors.pitch_err.push_back(*pe);
  }
  if (!saw_columns)
    throw DataError("missing column header row");

  auto get = [&](std::string_view key) -> std::string {
    auto it = header.find(key);
    if (it == header.end())
      throw DataError("missing header key '" + std::string(key) + "'");
    return it->second;
  };
  rec.meta.participant_id = get("participant_id");
  const auto platform = parse_platform(get("platform"));
  const auto condition = parse_condition(get("condition"));
  const auto dist = text::parse_double(get("user_distance_mm"));
  if (!platform || !condition || !dist)
    throw DataError("malformed error-series header");
  rec.meta.platform = *platform;
  rec.meta.condition = *condition;
  rec.meta.user_distance_mm = *dist;
  if (auto it = header.find("augmented_by"); it != header.end())
    rec.augmented_by = it->second;
  return rec;
}

void save_error_recording(const ErrorRecording &rec,
                          const std::filesystem::path &path) {
  text::write_file(path, format_error_recording(rec));
}

ErrorRecording load_error_recording(const std::filesystem::path &path) {
  return parse_error_recording(text::read_file(path));
}

} // namespace mlgaze
