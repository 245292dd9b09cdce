// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/analysis.hpp"

#include "mlgaze/error.hpp"
#include "mlgaze/text.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace mlgaze {

namespace {

std::vector<double> sorted_copy(std::span<const double> x) {
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  return v;
}

double quantile_sorted(const std::vector<double> &v, double p) {
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

double median_sorted(const std::vector<double> &v) {
  const auto n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void require_nonempty(std::span<const double> x, const char *what) {
  if (x.empty())
    throw UsageError(std::string(what) + " of an empty series");
}

} // namespace

double mean(std::span<const double> x) {
  require_nonempty(x, "mean");
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

double median(std::span<const double> x) {
  require_nonempty(x, "median");
  return median_sorted(sorted_copy(x));
}

double quantile(std::span<const double> x, double p) {
  require_nonempty(x, "quantile");
  if (!(p >= 0.0 && p <= 1.0))
    throw UsageError("quantile level must lie in [0, 1]");
  return quantile_sorted(sorted_copy(x), p);
}

double mad(std::span<const double> x) {
  const double m = median(x);
  std::vector<double> dev(x.size());
  std::transform(x.begin(), x.end(), dev.begin(),
                 [m](double v) { return std::abs(v - m); });
  return median(dev);
}

double iqr(std::span<const double> x) {
  require_nonempty(x, "iqr");
  const auto v = sorted_copy(x);
  return quantile_sorted(v, 0.75) - quantile_sorted(v, 0.25);
}

std::vector<double> median_filter(std::span<const double> x, int kernel_w) {
  if (kernel_w < 1 || kernel_w % 2 == 0)
    throw UsageError("median filter kernel must be odd and >= 1");
  require_nonempty(x, "median filter");
  const auto n = static_cast<long>(x.size());
  const long half = kernel_w / 2;

  // Sorted window maintained incrementally: erase the leaving sample, insert
  // the entering one.
  auto at = [&](long i) {
    return x[static_cast<std::size_t>(std::clamp(i, 0L, n - 1))];
  };
  std::vector<double> window;
  window.reserve(static_cast<std::size_t>(kernel_w));
  for (long j = -half; j <= half; ++j)
    window.push_back(at(j));
  std::sort(window.begin(), window.end());

  std::vector<double> y(x.size());
  for (long i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] = window[static_cast<std::size_t>(half)];
    if (i + 1 == n)
      break;
    const double leaving = at(i - half);
    const double entering = at(i + half + 1);
    window.erase(std::lower_bound(window.begin(), window.end(), leaving));
    window.insert(std::upper_bound(window.begin(), window.end(), entering),
                  entering);
  }
  return y;
}

std::vector<bool> iqr_outliers(std::span<const double> x) {
  if (x.size() < 4)
    throw UsageError("IQR outlier test needs at least 4 samples");
  const auto v = sorted_copy(x);
  const double q1 = quantile_sorted(v, 0.25);
  const double q3 = quantile_sorted(v, 0.75);
  const double fence = 1.5 * (q3 - q1);
  std::vector<bool> mask(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    mask[i] = x[i] > q3 + fence || x[i] < q1 - fence;
  return mask;
}

std::vector<bool> mad_outliers(std::span<const double> x, double k) {
  if (x.size() < 3)
    throw UsageError("MAD outlier test needs at least 3 samples");
  const double m = median(x);
  const double spread = mad(x);
  if (spread == 0.0) {
    if (x.size() < 4)
      return std::vector<bool>(x.size(), false);
    return iqr_outliers(x);
  }
  std::vector<bool> mask(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    mask[i] = std::abs(x[i] - m) > k * spread;
  return mask;
}

DescriptiveStats describe(std::span<const double> x) {
  if (x.size() < 2)
    throw UsageError("describe needs at least 2 samples");
  DescriptiveStats s;
  s.n = x.size();
  s.mean = mean(x);
  double ss = 0.0;
  for (double v : x)
    ss += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  s.mad = mad(x);
  s.iqr = iqr(x);
  const double half = 1.96 * s.sd / std::sqrt(static_cast<double>(s.n));
  s.ci95_low = s.mean - half;
  s.ci95_high = s.mean + half;
  return s;
}

double gaussian_kernel(double u) {
  return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
}

KdeCurve kde(std::span<const double> x, double h,
             std::span<const double> eval_points) {
  if (!(h > 0.0))
    throw UsageError("KDE bandwidth must be positive");
  require_nonempty(x, "kde");
  KdeCurve curve;
  curve.bandwidth_h = h;
  curve.eval_points.assign(eval_points.begin(), eval_points.end());
  curve.densities.reserve(eval_points.size());
  const double norm = 1.0 / (static_cast<double>(x.size()) * h);
  for (double y : eval_points) {
    double acc = 0.0;
    for (double xi : x)
      acc += gaussian_kernel((y - xi) / h);
    curve.densities.push_back(norm * acc);
  }
  return curve;
}

std::vector<double> kde_grid(std::span<const double> x, double h,
                             std::size_t points) {
  require_nonempty(x, "kde grid");
  if (points < 2)
    throw UsageError("KDE grid needs at least 2 points");
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it - 4.0 * h;
  const double hi = *hi_it + 4.0 * h;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                       static_cast<double>(points - 1);
  return grid;
}

std::vector<std::optional<double>>
per_aoi_mean(const ErrorSeries &errors, ErrorChannel channel, bool magnitude) {
  errors.validate();
  const auto &v = errors.channel(channel);
  std::vector<double> sum(kAoiCount, 0.0);
  std::vector<std::size_t> count(kAoiCount, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int a = errors.aoi_ids[i];
    if (a < 1 || a > kAoiCount)
      throw DataError("AOI id out of range in error series");
    const auto k = static_cast<std::size_t>(a - 1);
    sum[k] += magnitude ? std::abs(v[i]) : v[i];
    ++count[k];
  }
  std::vector<std::optional<double>> out(kAoiCount);
  for (std::size_t k = 0; k < out.size(); ++k)
    if (count[k] > 0)
      out[k] = sum[k] / static_cast<double>(count[k]);
  return out;
}

CorrelationMatrix
correlation_of_vectors(const std::vector<std::string> &names,
                       const std::vector<std::vector<double>> &vectors) {
  if (vectors.size() < 2)
    throw UsageError("correlation needs at least two series");
  if (names.size() != vectors.size())
    throw UsageError("one name per series required");
  const auto len = vectors.front().size();
  for (const auto &v : vectors)
    if (v.size() != len || len < 2)
      throw UsageError("correlated vectors must share a length >= 2");

  const auto m = vectors.size();
  std::vector<std::vector<double>> centered(m);
  std::vector<double> norms(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double mu = mean(vectors[i]);
    centered[i].resize(len);
    double ss = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
      centered[i][t] = vectors[i][t] - mu;
      ss += centered[i][t] * centered[i][t];
    }
    norms[i] = std::sqrt(ss);
  }

  CorrelationMatrix out;
  out.names = names;
  out.r.assign(m, std::vector<std::optional<double>>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      if (norms[i] == 0.0 || norms[j] == 0.0)
        continue;
      double r = 1.0;
      if (i != j) {
        double dot = 0.0;
        for (std::size_t t = 0; t < len; ++t)
          dot += centered[i][t] * centered[j][t];
        r = std::clamp(dot / (norms[i] * norms[j]), -1.0, 1.0);
      }
      out.r[i][j] = r;
      out.r[j][i] = r;
    }
  }
  return out;
}

CorrelationMatrix correlation_matrix(const std::vector<NamedErrors> &series,
                                     ErrorChannel channel) {
  std::vector<std::string> names;
  std::vector<std::vector<double>> vectors;
  for (const auto &s : series) {
    if (s.errors == nullptr)
      throw UsageError("null error series");
    const auto per_aoi = per_aoi_mean(*s.errors, channel);
    std::vector<double> v;
    for (std::size_t k = 0; k < per_aoi.size(); ++k) {
      if (!per_aoi[k])
        throw DataError(s.name + ": AOI " + std::to_string(k + 1) +
                        " has no samples");
      v.push_back(*per_aoi[k]);
    }
    names.push_back(s.name);
    vectors.push_back(std::move(v));
  }
  return correlation_of_vectors(names, vectors);
}

std::vector<AngleSample> aoi_gt_angles(const GazeSession &session) {
  std::vector<AngleSample> out;
  for (const auto &p : session.aoi_grid)
    out.push_back(gt_angles(relative_to_origin(p, session.screen),
                            session.screen, session.meta.user_distance_mm));
  return out;
}

SpatialErrorMap spatial_error_map(const ErrorSeries &errors,
                                  const std::vector<AngleSample> &aoi_angles) {
  if (aoi_angles.size() != static_cast<std::size_t>(kAoiCount))
    throw UsageError("spatial map needs ground-truth angles for 15 AOIs");
  const auto means = per_aoi_mean(errors, ErrorChannel::frontal);
  SpatialErrorMap map;
  std::vector<std::size_t> counts(kAoiCount, 0);
  for (int a : errors.aoi_ids)
    ++counts[static_cast<std::size_t>(a - 1)];
  for (std::size_t k = 0; k < static_cast<std::size_t>(kAoiCount); ++k) {
    SpatialCell c;
    c.aoi_id = static_cast<int>(k) + 1;
    c.gt_yaw = aoi_angles[k].theta_yaw;
    c.gt_pitch = aoi_angles[k].theta_pitch;
    c.mean_abs_error = means[k];
    c.samples = counts[k];
    map.cells.push_back(c);
  }
  return map;
}

std::vector<bool> outlier_drop_mask(const ErrorSeries &errors,
                                    const CleanOptions &opts) {
  errors.validate();
  std::vector<bool> drop(errors.size(), false);
  if (opts.method != CleanMethod::mad && opts.method != CleanMethod::iqr)
    return drop;
  for (auto c : kErrorChannels) {
    const auto mask = opts.method == CleanMethod::mad
                          ? mad_outliers(errors.channel(c), opts.mad_k)
                          : iqr_outliers(errors.channel(c));
    for (std::size_t i = 0; i < mask.size(); ++i)
      drop[i] = drop[i] || mask[i];
  }
  return drop;
}

ErrorSeries clean_errors(const ErrorSeries &errors, const CleanOptions &opts) {
  errors.validate();
  if (errors.empty())
    throw DataError("cannot clean an empty error series");
  switch (opts.method) {
  case CleanMethod::none:
    return errors;
  case CleanMethod::median: {
    ErrorSeries out = errors;
    for (auto c : kErrorChannels)
      out.channel(c) = median_filter(errors.channel(c), opts.kernel_w);
    return out;
  }
  case CleanMethod::mad:
  case CleanMethod::iqr:
    break;
  }
  const auto drop = outlier_drop_mask(errors, opts);
  ErrorSeries out;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (drop[i])
      continue;
    out.frontal_err.push_back(errors.frontal_err[i]);
    out.yaw_err.push_back(errors.yaw_err[i]);
    out.pitch_err.push_back(errors.pitch_err[i]);
    out.aoi_ids.push_back(errors.aoi_ids[i]);
    out.timestamps.push_back(errors.timestamps[i]);
  }
  if (out.empty())
    throw DataError("outlier removal dropped every sample");
  return out;
}

std::optional<CleanMethod> parse_clean_method(std::string_view t) {
  const auto s = text::lower(text::trim(t));
  if (s == "none")
    return CleanMethod::none;
  if (s == "median")
    return CleanMethod::median;
  if (s == "mad")
    return CleanMethod::mad;
  if (s == "iqr")
    return CleanMethod::iqr;
  return std::nullopt;
}

} // namespace mlgaze
