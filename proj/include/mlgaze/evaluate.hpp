// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_EVALUATE_HPP
#define MLGAZE_EVALUATE_HPP

#include "mlgaze/learn.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mlgaze {

struct ConfusionMatrix {
  std::vector<std::string> class_names;
  std::vector<std::vector<long>> counts; ///< [true][predicted]

  long total() const;
};

struct ClassRates {
  double tpr = 0.0;
  double fpr = 0.0;
  double tnr = 0.0;
  double fnr = 0.0;
  double precision = 0.0;
  bool precision_undefined = false; ///< class never predicted; counted as 0
};

/// Macro averages of the one-vs-rest rates.
struct RateReport {
  double tpr = 0.0;
  double fpr = 0.0;
  double tnr = 0.0;
  double fnr = 0.0;
  double precision = 0.0;
  std::vector<ClassRates> per_class;
  bool precision_warning = false;
  double accuracy = 0.0;
};

struct ClassificationReport {
  ConfusionMatrix confusion;
  RateReport rates;
};

ClassificationReport classification_report(const std::vector<int> &truth,
                                           const std::vector<int> &predicted,
                                           std::size_t n_classes);

double accuracy(const std::vector<int> &truth, const std::vector<int> &predicted);

/// Stratified fold assignment: fold id per row. Each class is shuffled and
/// dealt round-robin, continuing where the previous class stopped.
std::vector<int> stratified_folds(const std::vector<int> &labels,
                                  std::size_t n_classes, int k_folds,
                                  std::uint64_t seed);

struct FoldInfo {
  int fold = 0;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  const Standardization *scale = nullptr; ///< fitted on train_indices only
};

using FoldHook = std::function<void(const FoldInfo &)>;

struct CvResult {
  std::vector<double> fold_scores;
  double mean = 0.0;
  double sd = 0.0;           ///< sample sd of the fold scores
  std::vector<int> folds;    ///< fold id of every row
  std::vector<int> predicted; ///< out-of-fold prediction of every row
};

/// Stratified k-fold accuracy; every fold refits the standardization and the
/// model on its own training rows.
CvResult kfold_cv(const LabeledMatrix &m, const ModelSpec &spec, int k_folds,
                  std::uint64_t seed, const FoldHook &hook = {});

struct ParamGrid {
  std::vector<int> k;
  std::vector<double> C;
  std::vector<double> gamma;
  std::vector<std::vector<int>> hidden;
  std::vector<double> alpha;
  std::vector<int> n_estimators;
  std::vector<int> max_depth;
};

ParamGrid default_grid(ModelFamily family);

/// Points of the grid for `family`, each a copy of `base` with the varied
/// parameters set.
std::vector<ModelSpec> expand_grid(ModelFamily family, const ParamGrid &grid,
                                   const ModelSpec &base);

/// The varied parameters of a spec, in grid order, for tie-breaking and
/// reporting.
std::vector<std::vector<double>> param_tuple(const ModelSpec &spec);
std::string describe_params(const ModelSpec &spec);

struct GridRow {
  ModelSpec spec;
  CvResult cv;
};

struct GridResult {
  std::vector<GridRow> table;
  std::size_t best = 0;
};

/// Best mean CV accuracy wins; ties go to the lexicographically smallest
/// parameter tuple. Every cell uses the same folds.
GridResult grid_search(const LabeledMatrix &m, ModelFamily family,
                       const ParamGrid &grid, int k_folds, std::uint64_t seed,
                       const ModelSpec &base = {});

struct LearningCurve {
  std::vector<std::size_t> train_sizes;
  std::vector<double> train_scores;
  std::vector<double> cv_scores;
};

/// For each fold and size, fits on a stratified subsample of the fold's
/// training rows; scores are averaged over folds.
LearningCurve learning_curve(const LabeledMatrix &m, const ModelSpec &spec,
                             const std::vector<std::size_t> &sizes, int k_folds,
                             std::uint64_t seed);

/// Stratified subsample of `pool` with `size` rows.
std::vector<std::size_t> stratified_subsample(const std::vector<int> &labels,
                                              const std::vector<std::size_t> &pool,
                                              std::size_t size,
                                              std::uint64_t seed);

std::string format_confusion_csv(const ConfusionMatrix &cm);
std::string format_rates_csv(const RateReport &r,
                             const std::vector<std::string> &class_names);
std::string format_cv_csv(const CvResult &cv);
std::string format_grid_csv(const GridResult &g);
std::string format_learning_curve_csv(const LearningCurve &lc);

} // namespace mlgaze

#endif // MLGAZE_EVALUATE_HPP
