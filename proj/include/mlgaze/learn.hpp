// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_LEARN_HPP
#define MLGAZE_LEARN_HPP

#include "mlgaze/analysis.hpp"
#include "mlgaze/features.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mlgaze {

// ---------------------------------------------------------------- KNN

struct KnnModel {
  Rows x;
  std::vector<int> y;
  int k = 3;
  std::size_t n_classes = 0;
};

KnnModel knn_fit(const LabeledMatrix &train, int k);

/// Training-row indices of the k nearest rows, nearest first; equal
/// distances keep index order.
std::vector<std::size_t> knn_neighbors(const KnnModel &model,
                                       const std::vector<double> &query);

/// Majority vote; ties go to the class with the smallest mean neighbour
/// distance, then the lowest class id.
std::vector<int> knn_predict(const KnnModel &model, const Rows &rows);

// ---------------------------------------------------------------- SVM

double rbf_kernel(const std::vector<double> &a, const std::vector<double> &b,
                  double gamma);

/// One class pair. `positive` gets y = +1.
struct SvmBinary {
  int positive = 0;
  int negative = 1;
  Rows support;              ///< support vectors
  std::vector<double> coef;  ///< a_i * y_i of each support vector
  double bias = 0.0;         ///< f(x) = sum coef_i K(s_i, x) + bias

  // Training diagnostics; empty on a loaded model.
  std::vector<double> alpha;           ///< every training row of the pair
  std::vector<double> y;               ///< +1 / -1 per training row
  std::vector<double> dual_trace;      ///< dual objective per iteration
  double kkt_gap = 0.0;
  int iterations = 0;
};

struct SvmOptions {
  double tol = 1e-3;      ///< stop once the maximal KKT violation is below
  int max_iter = 200000;
};

struct SvmModel {
  double C = 10.0;
  double gamma = 1.0;
  std::size_t n_classes = 0;
  std::vector<SvmBinary> machines; ///< one per class pair (p < q)
};

SvmModel svm_fit(const LabeledMatrix &train, double C, double gamma,
                 const SvmOptions &opts = {});

double svm_decision(const SvmBinary &machine, double gamma,
                    const std::vector<double> &x);

/// One-vs-one vote. Tied classes are separated by the summed |decision| of
/// the pairings they lost (smallest wins), then by the lowest id.
std::vector<int> svm_predict(const SvmModel &model, const Rows &rows);

// ---------------------------------------------------------------- MLP

enum class MlpOutput { softmax, linear };

struct MlpModel {
  std::vector<int> layers; ///< input, hidden..., output widths
  std::vector<Eigen::MatrixXd> weights; ///< weights[l] is layers[l+1] x layers[l]
  std::vector<Eigen::VectorXd> biases;
  MlpOutput output = MlpOutput::softmax;
  double l2_alpha = 1e-4;
  std::vector<double> loss_trace; ///< mean loss per epoch
};

struct MlpOptions {
  std::vector<int> hidden = {50, 100, 50};
  double l2_alpha = 1e-4;
  int epochs = 300;
  int batch_size = 32;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Uniform weights in +-1/sqrt(fan_in), zero biases.
MlpModel mlp_init(const std::vector<int> &layers, MlpOutput output,
                  double l2_alpha, std::uint64_t seed);

struct MlpGradient {
  double loss = 0.0;
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

/// Mean loss over the columns of `x` (one sample per column) plus
/// l2_alpha * sum ||W||^2, and its gradient. `targets` holds one-hot columns
/// for softmax output, real targets for linear output.
MlpGradient mlp_loss_and_gradient(const MlpModel &model,
                                  const Eigen::MatrixXd &x,
                                  const Eigen::MatrixXd &targets);

/// Network outputs (class probabilities or regression values), one column
/// per row of `rows`.
Eigen::MatrixXd mlp_forward(const MlpModel &model, const Rows &rows);

MlpModel mlp_fit(const LabeledMatrix &train, const MlpOptions &opts,
                 std::uint64_t seed);
MlpModel mlp_fit_regressor(const Rows &x, const std::vector<double> &y,
                           const MlpOptions &opts, std::uint64_t seed);

std::vector<int> mlp_predict(const MlpModel &model, const Rows &rows);
std::vector<double> mlp_predict_values(const MlpModel &model, const Rows &rows);

// ---------------------------------------------------------------- Forest

struct TreeNode {
  int feature = -1; ///< -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int label = 0; ///< majority class at the node
};

struct ForestModel {
  int n_estimators = 200;
  int max_depth = 8;
  std::size_t n_classes = 0;
  std::vector<std::vector<TreeNode>> trees;
  std::vector<double> importances; ///< sum to 1 unless no tree ever split
};

ForestModel forest_fit(const LabeledMatrix &train, int n_estimators,
                       int max_depth, std::uint64_t seed);
std::vector<int> forest_predict(const ForestModel &model, const Rows &rows);

/// Mean impurity decrease per feature, normalized to sum 1.
std::vector<double> forest_importance(const LabeledMatrix &train,
                                      int n_estimators, int max_depth,
                                      std::uint64_t seed);

// ---------------------------------------------------------------- Linear family

enum class Penalty { none, ridge, lasso, elasticnet };

std::string_view to_string(Penalty p);
std::optional<Penalty> parse_penalty(std::string_view text);

enum class LinearSolver { automatic, closed_form, coordinate_descent };

/// Minimizes ||y - b0 - X w||^2 + z1 ||w||_1 + z2 ||w||^2.
/// Ridge sets z2 = strength, lasso z1 = strength, elastic net
/// z1 = mix * strength and z2 = (1 - mix) * strength.
struct LinearOptions {
  Penalty penalty = Penalty::elasticnet;
  double strength = 1.0;
  double mix = 0.5;
  int degree = 1;
  LinearSolver solver = LinearSolver::automatic;
  double tol = 1e-8;
  int max_iter = 1000000;
};

struct LinearModel {
  Penalty penalty = Penalty::none;
  double z1 = 0.0;
  double z2 = 0.0;
  int degree = 1;
  std::size_t n_inputs = 0;
  std::vector<std::vector<int>> terms; ///< input exponents of each expanded term
  std::vector<double> w;
  double intercept = 0.0;
  int iterations = 0; ///< coordinate-descent sweeps, 0 for closed form
};

/// Monomials of total degree 1..degree over n inputs, by degree then
/// lexicographic on the input indices.
std::vector<std::vector<int>> polynomial_terms(std::size_t n_inputs, int degree);
Rows expand_polynomial(const Rows &x, const std::vector<std::vector<int>> &terms);

LinearModel linear_fit(const Rows &x, const std::vector<double> &y,
                       const LinearOptions &opts);
std::vector<double> linear_predict(const LinearModel &model, const Rows &x);

double soft_threshold(double v, double t);

double rmse(const std::vector<double> &pred, const std::vector<double> &truth);

/// Y = B0 + B1 X1 + B2 X2 + B3 X3 over [gaze angle, gaze yaw, gaze pitch].
struct ErrorModel {
  std::string condition;
  double b0 = 0.0;
  std::array<double, 3> b{};
};

ErrorModel export_error_model(const LinearModel &model,
                              std::string_view condition);

std::string format_error_models(const std::vector<ErrorModel> &models);

// ---------------------------------------------------------------- Regression data

/// Predictors [theta_gaze, theta_yaw, theta_pitch] of the estimated gaze and
/// the frontal error of each kept sample.
struct RegressionData {
  Rows x;
  std::vector<double> y;
};

inline const std::vector<std::string> &regression_column_names() {
  static const std::vector<std::string> names = {"gaze_angle", "gaze_yaw",
                                                 "gaze_pitch"};
  return names;
}

/// Cleans like clean_errors; samples dropped there are dropped from the
/// predictors too.
RegressionData regression_data(const GazeSession &session,
                               const CleanOptions &clean);

struct RegressionFit {
  LinearModel model;
  Standardization x_scale;
  Standardization y_scale;
  double rmse_std = 0.0;      ///< held-out, standardized units
  double rmse_deg = 0.0;      ///< held-out, degrees
  double baseline_std = 0.0;  ///< mean predictor, standardized units
  double baseline_deg = 0.0;
  std::vector<double> test_truth_deg;
  std::vector<double> test_pred_deg;
};

/// Standardizes X and y on a shuffled training share, fits, and scores the
/// held-out rows against the training-mean predictor.
RegressionFit fit_error_regression(const RegressionData &data,
                                   const LinearOptions &opts, double test_frac,
                                   std::uint64_t seed);

// ---------------------------------------------------------------- Classifier wrapper

enum class ModelFamily { knn, svm, mlp, forest };

std::string_view to_string(ModelFamily f);
std::optional<ModelFamily> parse_model_family(std::string_view text);

struct ModelSpec {
  ModelFamily family = ModelFamily::knn;
  int k = 3;
  double C = 10.0;
  double gamma = 1.0;
  MlpOptions mlp{};
  int n_estimators = 200;
  int max_depth = 8;
  std::uint64_t seed = 0;
};

/// A fitted model together with the standardization of its training rows.
struct Classifier {
  ModelSpec spec;
  std::vector<std::string> class_names;
  std::vector<std::string> column_names;
  Standardization scale;
  std::variant<KnnModel, SvmModel, MlpModel, ForestModel> model;
};

/// Fits the standardization on `train` (raw features), then the model.
Classifier fit_classifier(const LabeledMatrix &train, const ModelSpec &spec);

/// `rows` are raw, unstandardized features.
std::vector<int> predict(const Classifier &clf, const Rows &rows);

/// Versioned key=value text; doubles are written in shortest round-trip form
/// so a reloaded model predicts bit-identically.
std::string format_classifier(const Classifier &clf);
Classifier parse_classifier(std::string_view text);
void save_classifier(const Classifier &clf, const std::filesystem::path &path);
Classifier load_classifier(const std::filesystem::path &path);

std::string format_linear_model(const LinearModel &model,
                                const Standardization &x_scale,
                                const Standardization &y_scale);
struct LoadedLinearModel {
  LinearModel model;
  Standardization x_scale;
  Standardization y_scale;
};
LoadedLinearModel parse_linear_model(std::string_view text);

} // namespace mlgaze

#endif // MLGAZE_LEARN_HPP
