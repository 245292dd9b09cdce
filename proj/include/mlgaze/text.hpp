// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_TEXT_HPP
#define MLGAZE_TEXT_HPP

// Small helpers shared by the CSV readers and writers.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlgaze::text {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> lines(std::string_view s);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::string_view content);

std::string lower(std::string_view s);

} // namespace mlgaze::text

#endif // MLGAZE_TEXT_HPP
