// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_ANALYSIS_HPP
#define MLGAZE_ANALYSIS_HPP

#include "mlgaze/geometry.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mlgaze {

struct DescriptiveStats {
  double mean = 0.0;
  double sd = 0.0;  ///< sample standard deviation (n - 1)
  double mad = 0.0; ///< median absolute deviation from the median
  double iqr = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  std::size_t n = 0;
};

struct KdeCurve {
  std::vector<double> eval_points;
  std::vector<double> densities;
  double bandwidth_h = 0.0;
};

struct SpatialCell {
  int aoi_id = 0;
  double gt_yaw = 0.0;   ///< deg
  double gt_pitch = 0.0; ///< deg
  std::optional<double> mean_abs_error; ///< empty when the AOI has no samples
  std::size_t samples = 0;
};

/// One cell per AOI, in AOI order.
struct SpatialErrorMap {
  std::vector<SpatialCell> cells;
};

/// Symmetric matrix of Pearson r; an entry is empty when either vector has
/// zero variance.
struct CorrelationMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<std::optional<double>>> r;
};

enum class CleanMethod { none, median, mad, iqr };

struct CleanOptions {
  CleanMethod method = CleanMethod::median;
  int kernel_w = 41;     ///< median filter width
  double mad_k = 3.0;    ///< MAD threshold multiplier
};

double mean(std::span<const double> x);
double median(std::span<const double> x);

/// Linear interpolation at position p * (n - 1) of the sorted data.
double quantile(std::span<const double> x, double p);

double mad(std::span<const double> x);
double iqr(std::span<const double> x);

/// Sliding median with replicate padding at both ends.
std::vector<double> median_filter(std::span<const double> x, int kernel_w);

/// Flags |x_i - median| > k * MAD. Falls back to the IQR fences when MAD is 0.
std::vector<bool> mad_outliers(std::span<const double> x, double k = 3.0);

/// Flags values outside [Q1 - 1.5 IQR, Q3 + 1.5 IQR].
std::vector<bool> iqr_outliers(std::span<const double> x);

DescriptiveStats describe(std::span<const double> x);

double gaussian_kernel(double u);

KdeCurve kde(std::span<const double> x, double h,
             std::span<const double> eval_points);

/// Evenly spaced grid covering [min(x) - 4h, max(x) + 4h].
std::vector<double> kde_grid(std::span<const double> x, double h,
                             std::size_t points = 512);

/// Mean of |error| (or the signed mean) per AOI; empty for unvisited AOIs.
std::vector<std::optional<double>>
per_aoi_mean(const ErrorSeries &errors, ErrorChannel channel,
             bool magnitude = true);

/// Pearson r between equally long vectors.
CorrelationMatrix
correlation_of_vectors(const std::vector<std::string> &names,
                       const std::vector<std::vector<double>> &vectors);

struct NamedErrors {
  std::string name;
  const ErrorSeries *errors = nullptr;
};

/// Reduces each series to its per-AOI mean |error| 15-vector, then correlates.
CorrelationMatrix correlation_matrix(const std::vector<NamedErrors> &series,
                                     ErrorChannel channel =
                                         ErrorChannel::frontal);

/// Ground-truth yaw/pitch of each AOI, for keying spatial maps.
std::vector<AngleSample> aoi_gt_angles(const GazeSession &session);

SpatialErrorMap spatial_error_map(const ErrorSeries &errors,
                                  const std::vector<AngleSample> &aoi_angles);

/// Samples that MAD or IQR cleaning would drop (any channel flagged). All
/// false for the median and none methods.
std::vector<bool> outlier_drop_mask(const ErrorSeries &errors,
                                    const CleanOptions &opts);

/// Median filtering replaces values; MAD and IQR drop every sample flagged on
/// any of the three channels.
ErrorSeries clean_errors(const ErrorSeries &errors, const CleanOptions &opts);

std::optional<CleanMethod> parse_clean_method(std::string_view text);

} // namespace mlgaze

#endif // MLGAZE_ANALYSIS_HPP
