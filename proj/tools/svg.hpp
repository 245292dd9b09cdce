// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_TOOLS_SVG_HPP
#define MLGAZE_TOOLS_SVG_HPP

#include <string>
#include <vector>

namespace cli::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
};

std::string line_plot(const Axes &axes, const std::vector<Series> &series);

/// Points coloured by group label.
std::string scatter(const Axes &axes, const std::vector<double> &x,
                    const std::vector<double> &y,
                    const std::vector<std::string> &groups);

/// values[r][c]; NaN cells are drawn grey.
std::string heatmap(const std::string &title,
                    const std::vector<std::vector<double>> &values,
                    const std::vector<std::string> &row_labels,
                    const std::vector<std::string> &col_labels);

} // namespace cli::svg

#endif // MLGAZE_TOOLS_SVG_HPP
