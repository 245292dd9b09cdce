// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_FEATURES_HPP
#define MLGAZE_FEATURES_HPP

#include "mlgaze/analysis.hpp"
#include "mlgaze/augment.hpp"
#include "mlgaze/dataset.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mlgaze {

inline constexpr std::size_t kFeatureCount = 20;
inline constexpr std::size_t kReducedFeatureCount = 5;

/// Per-AOI error (15 values) followed by mean, sd, iqr, ci_lo, ci_hi.
using FeatureVector = std::array<double, kFeatureCount>;
/// The trailing statistics of a FeatureVector: mean, sd, iqr, ci_lo, ci_hi.
using ReducedFeatureVector = std::array<double, kReducedFeatureCount>;

const std::vector<std::string> &feature_column_names();
const std::vector<std::string> &reduced_column_names();

using Rows = std::vector<std::vector<double>>;

/// Per-column affine transform fitted on training rows.
struct Standardization {
  std::vector<double> mean;
  std::vector<double> sd; ///< population sd

  std::vector<double> apply(const std::vector<double> &row) const;
  std::vector<double> invert(const std::vector<double> &row) const;
  Rows apply(const Rows &rows) const;
  Rows invert(const Rows &rows) const;
};

struct LabeledMatrix {
  Rows rows;
  std::vector<int> labels;
  std::vector<std::string> class_names;
  std::vector<std::string> column_names;
  std::vector<std::string> categories; ///< frontal / yaw / pitch, per row
  std::vector<std::string> groups;     ///< participant id, per row
  std::optional<Standardization> standardization;

  std::size_t size() const { return rows.size(); }
  std::size_t cols() const { return rows.empty() ? column_names.size()
                                                 : rows.front().size(); }
  std::size_t n_classes() const { return class_names.size(); }

  /// Throws DataError on ragged rows or mismatched per-row lists.
  void validate() const;
  LabeledMatrix subset(const std::vector<std::size_t> &indices) const;
};

/// Per-AOI mean |error| (or signed mean) plus statistics of the series.
FeatureVector build_feature(const ErrorSeries &errors, ErrorChannel category,
                            bool magnitude = true);

ReducedFeatureVector reduce(const FeatureVector &f);

enum class Task { user_distance, head_pose, platform_pose, mixed };

std::string_view to_string(Task t);
std::optional<Task> parse_task(std::string_view text);

/// Class conditions of a task, in label order. Mixed tasks take their pose
/// classes from the platform.
std::vector<Condition> task_classes(Task task, Platform platform);

enum class FeatureSet { full, reduced };

struct AssembleOptions {
  Task task = Task::user_distance;
  Platform platform = Platform::desktop; ///< only used by the mixed task
  bool augment = true;
  std::uint64_t seed = 0;
  FeatureSet feature_set = FeatureSet::full;
  std::vector<ErrorChannel> categories = {
      ErrorChannel::frontal, ErrorChannel::yaw, ErrorChannel::pitch};
  bool magnitude = true;
  AugmentParams augment_params{};
};

struct LabeledErrors {
  SessionMeta meta;
  ErrorSeries errors; ///< cleaned
};

/// One row per (session x category x variant). Sessions whose condition is
/// not part of the task are skipped. Neutral and UD60 recordings are the same
/// data: a participant contributing both to one task is an error.
LabeledMatrix assemble_dataset(const std::vector<LabeledErrors> &sessions,
                               const AssembleOptions &opts);

Standardization fit_standardization(const LabeledMatrix &m);
LabeledMatrix apply_standardization(const LabeledMatrix &m,
                                    const Standardization &params);
/// Fits on `m` and applies to it; the parameters travel with the result.
LabeledMatrix standardize(const LabeledMatrix &m);

struct Split {
  LabeledMatrix train;
  LabeledMatrix test;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
};

/// Stratified shuffle split; the test share of each class is allotted by
/// largest remainder so the total is round(test_frac * n).
Split shuffle_split(const LabeledMatrix &m, double test_frac,
                    std::uint64_t seed);

/// Whole participants go to either side.
Split participant_split(const LabeledMatrix &m, double test_frac,
                        std::uint64_t seed);

/// Feature CSV: feature columns, then `label` (class name), `category` and
/// `participant`.
std::string format_feature_matrix(const LabeledMatrix &m);
LabeledMatrix parse_feature_matrix(std::string_view text);
void save_feature_matrix(const LabeledMatrix &m,
                         const std::filesystem::path &path);
LabeledMatrix load_feature_matrix(const std::filesystem::path &path);

} // namespace mlgaze

#endif // MLGAZE_FEATURES_HPP
