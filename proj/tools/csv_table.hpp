// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_TOOLS_CSV_TABLE_HPP
#define MLGAZE_TOOLS_CSV_TABLE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cli {

/// Header plus string cells; enough for the tables the library writes.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  static CsvTable parse(std::string_view text);
  static CsvTable read(const std::filesystem::path &path);

  std::optional<std::size_t> column(std::string_view name) const;
  /// Values of a column; unparsable cells become NaN.
  std::vector<double> numbers(std::size_t col) const;
  std::vector<std::string> strings(std::size_t col) const;
};

} // namespace cli

#endif // MLGAZE_TOOLS_CSV_TABLE_HPP
