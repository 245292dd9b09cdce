// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace cli::svg {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 55;

const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '&':
      out += "&amp;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const {
    return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

Frame fit_frame(const std::vector<const std::vector<double> *> &xs,
                const std::vector<const std::vector<double> *> &ys) {
  auto range = [](const std::vector<const std::vector<double> *> &vs) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto *v : vs)
      for (double d : *v)
        if (std::isfinite(d)) {
          lo = std::min(lo, d);
          hi = std::max(hi, d);
        }
    if (!std::isfinite(lo))
      return std::pair{0.0, 1.0};
    if (hi == lo)
      return std::pair{lo - 0.5, hi + 0.5};
    const double pad = (hi - lo) * 0.05;
    return std::pair{lo - pad, hi + pad};
  };
  const auto [x0, x1] = range(xs);
  const auto [y0, y1] = range(ys);
  return {x0, x1, y0, y1};
}

void open_svg(std::ostringstream &out, const Axes &axes, const Frame &f) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(axes.title) << "</text>\n";
  const double l = kLeft, r = kWidth - kRight, t = kTop, b = kHeight - kBottom;
  out << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << r - l
      << "\" height=\"" << b - t << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
    out << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << b + 16
        << "\" text-anchor=\"middle\">" << label(xv) << "</text>\n"
        << "<text x=\"" << l - 6 << "\" y=\"" << num(f.py(yv) + 4)
        << "\" text-anchor=\"end\">" << label(yv) << "</text>\n";
  }
  out << "<text x=\"" << (l + r) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << escape(axes.x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << (t + b) / 2 << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << (t + b) / 2 << ")\">"
      << escape(axes.y_label) << "</text>\n";
}

void legend(std::ostringstream &out, const std::vector<std::string> &names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double y = kTop + 14 + 18 * static_cast<double>(i);
    out << "<rect x=\"" << kWidth - kRight + 12 << "\" y=\"" << y - 9
        << "\" width=\"10\" height=\"10\" fill=\"" << kPalette[i % 10] << "\"/>\n"
        << "<text x=\"" << kWidth - kRight + 28 << "\" y=\"" << y << "\">"
        << escape(names[i]) << "</text>\n";
  }
}

} // namespace

std::string line_plot(const Axes &axes, const std::vector<Series> &series) {
  std::vector<const std::vector<double> *> xs, ys;
  for (const auto &s : series) {
    xs.push_back(&s.x);
    ys.push_back(&s.y);
  }
  const auto f = fit_frame(xs, ys);
  std::ostringstream out;
  open_svg(out, axes, f);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto &s = series[i];
    names.push_back(s.name);
    out << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\""
        << kPalette[i % 10] << "\" points=\"";
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k)
      if (std::isfinite(s.x[k]) && std::isfinite(s.y[k]))
        out << num(f.px(s.x[k])) << ',' << num(f.py(s.y[k])) << ' ';
    out << "\"/>\n";
  }
  legend(out, names);
  out << "</svg>\n";
  return out.str();
}

std::string scatter(const Axes &axes, const std::vector<double> &x,
                    const std::vector<double> &y,
                    const std::vector<std::string> &groups) {
  const auto f = fit_frame({&x}, {&y});
  std::ostringstream out;
  open_svg(out, axes, f);
  std::map<std::string, std::size_t> colour;
  std::vector<std::string> names;
  for (const auto &g : groups)
    if (colour.emplace(g, names.size()).second)
      names.push_back(g);
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    const auto c = i < groups.size() ? colour[groups[i]] : 0;
    out << "<circle cx=\"" << num(f.px(x[i])) << "\" cy=\"" << num(f.py(y[i]))
        << "\" r=\"2.5\" fill=\"" << kPalette[c % 10] << "\" fill-opacity=\"0.7\"/>\n";
  }
  legend(out, names);
  out << "</svg>\n";
  return out.str();
}

std::string heatmap(const std::string &title,
                    const std::vector<std::vector<double>> &values,
                    const std::vector<std::string> &row_labels,
                    const std::vector<std::string> &col_labels) {
  const auto rows = values.size();
  const auto cols = rows ? values.front().size() : 0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto &r : values)
    for (double v : r)
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  const double cw = cols ? (kWidth - kLeft - kRight) / static_cast<double>(cols) : 0;
  const double ch = rows ? (kHeight - kTop - kBottom) / static_cast<double>(rows) : 0;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(title) << "</text>\n";
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = values[r][c];
      std::string fill = "#cccccc";
      if (std::isfinite(v)) {
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        const int red = static_cast<int>(255 * t);
        const int blue = static_cast<int>(255 * (1 - t));
        char buf[16];
        std::snprintf(buf, sizeof buf, "#%02x40%02x", red, blue);
        fill = buf;
      }
      const double x = kLeft + cw * static_cast<double>(c);
      const double y = kTop + ch * static_cast<double>(r);
      out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\""
          << num(cw) << "\" height=\"" << num(ch) << "\" fill=\"" << fill
          << "\" stroke=\"white\"/>\n"
          << "<text x=\"" << num(x + cw / 2) << "\" y=\"" << num(y + ch / 2 + 4)
          << "\" text-anchor=\"middle\" fill=\"white\">"
          << (std::isfinite(v) ? label(v) : "-") << "</text>\n";
    }
  for (std::size_t r = 0; r < rows && r < row_labels.size(); ++r)
    out << "<text x=\"" << kLeft - 6 << "\" y=\""
        << num(kTop + ch * (static_cast<double>(r) + 0.5) + 4)
        << "\" text-anchor=\"end\">" << escape(row_labels[r]) << "</text>\n";
  for (std::size_t c = 0; c < cols && c < col_labels.size(); ++c)
    out << "<text x=\"" << num(kLeft + cw * (static_cast<double>(c) + 0.5))
        << "\" y=\"" << kHeight - kBottom + 16 << "\" text-anchor=\"middle\">"
        << escape(col_labels[c]) << "</text>\n";
  out << "<text x=\"" << kWidth - kRight + 12 << "\" y=\"" << kTop + 14
      << "\">min " << label(lo) << "</text>\n"
      << "<text x=\"" << kWidth - kRight + 12 << "\" y=\"" << kTop + 32
      << "\">max " << label(hi) << "</text>\n"
      << "</svg>\n";
  return out.str();
}

} // namespace cli::svg
