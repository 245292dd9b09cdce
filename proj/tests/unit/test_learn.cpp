// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include "mlgaze/error.hpp"
#include "mlgaze/learn.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace mlgaze;
using namespace testing_support;

namespace {

double accuracy(const std::vector<int> &pred, const std::vector<int> &truth) {
  std::size_t hit = 0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    hit += pred[i] == truth[i];
  return static_cast<double>(hit) / static_cast<double>(pred.size());
}

LabeledMatrix xor_data(std::uint64_t seed) {
  auto m = blobs({{0, 0}, {2, 2}, {0, 2}, {2, 0}}, 25, 0.15, seed);
  for (auto &l : m.labels)
    l = l < 2 ? 0 : 1;
  m.class_names.resize(2);
  return m;
}

// Feature 0 copies the label; the rest are uniform noise.
LabeledMatrix label_copy_data(std::size_t noise, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Rows rows;
  std::vector<int> labels;
  for (int i = 0; i < 300; ++i) {
    const int y = i % 3;
    std::vector<double> r = {static_cast<double>(y)};
    for (std::size_t j = 0; j < noise; ++j)
      r.push_back(u(rng));
    rows.push_back(r);
    labels.push_back(y);
  }
  return make_matrix(rows, labels, 3);
}

Rows random_design(std::size_t n, std::size_t p, std::uint64_t seed) {
  Rows x;
  for (std::size_t i = 0; i < n; ++i)
    x.push_back(random_vector(p, seed * 7919 + i, -1, 1));
  return x;
}

std::vector<double> linear_target(const Rows &x, const std::vector<double> &w,
                                  double noise_sd, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> n(0.0, noise_sd);
  std::vector<double> y;
  for (const auto &r : x)
    y.push_back(std::inner_product(r.begin(), r.end(), w.begin(), 0.7) + n(rng));
  return y;
}

void expect_close(const LinearModel &a, const LinearModel &b, double tol) {
  ASSERT_EQ(a.w.size(), b.w.size());
  for (std::size_t j = 0; j < a.w.size(); ++j)
    EXPECT_NEAR(a.w[j], b.w[j], tol) << "coefficient " << j;
  EXPECT_NEAR(a.intercept, b.intercept, tol);
}

} // namespace

// KNN

TEST(Knn, HandExample) {
  const auto m = make_matrix({{0, 0}, {0.1, 0}, {5, 5}}, {0, 0, 1}, 2);
  EXPECT_EQ(knn_predict(knn_fit(m, 3), {{0.05, 0}}), (std::vector<int>{0}));
  EXPECT_EQ(knn_predict(knn_fit(m, 1), {{5, 5}}), (std::vector<int>{1}));
  EXPECT_THROW(knn_fit(m, 4), UsageError);
  EXPECT_THROW(knn_fit(m, 0), UsageError);
}

TEST(Knn, TieGoesToCloserClass) {
  const auto m = make_matrix({{0.0}, {3.0}}, {1, 0}, 2);
  EXPECT_EQ(knn_predict(knn_fit(m, 2), {{1.0}}), (std::vector<int>{1}));
  EXPECT_EQ(knn_predict(knn_fit(m, 2), {{2.0}}), (std::vector<int>{0}));
  // Equal mean distance falls back to the lowest class id.
  EXPECT_EQ(knn_predict(knn_fit(m, 2), {{1.5}}), (std::vector<int>{0}));
}

TEST(Knn, NeighborsMatchBruteForce) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = blobs({{0, 0, 0}, {1, 1, 1}}, 40, 1.0, seed);
    const int k = 1 + static_cast<int>(seed % 7);
    const auto model = knn_fit(m, k);
    for (const auto &q : random_design(10, 3, seed + 100)) {
      std::vector<std::pair<double, std::size_t>> d;
      for (std::size_t i = 0; i < m.size(); ++i) {
        double s = 0;
        for (std::size_t j = 0; j < 3; ++j)
          s += (m.rows[i][j] - q[j]) * (m.rows[i][j] - q[j]);
        d.emplace_back(std::sqrt(s), i);
      }
      std::sort(d.begin(), d.end());
      std::set<std::size_t> oracle;
      for (int i = 0; i < k; ++i)
        oracle.insert(d[static_cast<std::size_t>(i)].second);
      const auto got = knn_neighbors(model, q);
      EXPECT_EQ(std::set<std::size_t>(got.begin(), got.end()), oracle);
    }
  }
}

TEST(Knn, OneNeighborMemorizesTraining) {
  const auto m = blobs({{0, 0}, {1, 0}, {0, 1}}, 50, 0.8, 3);
  EXPECT_EQ(accuracy(knn_predict(knn_fit(m, 1), m.rows), m.labels), 1.0);
}

// SVM

TEST(Svm, SeparableBlobs) {
  const auto m = blobs({{-3, -3}, {3, 3}}, 40, 0.5, 1);
  const auto model = svm_fit(m, 10.0, 1.0);
  EXPECT_EQ(accuracy(svm_predict(model, m.rows), m.labels), 1.0);
}

TEST(Svm, DualFeasibilityAndKkt) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = blobs({{0, 0}, {1.5, 0}, {0, 1.5}}, 30, 0.7, seed);
    const double C = 2.0;
    const auto model = svm_fit(m, C, 0.5);
    ASSERT_EQ(model.machines.size(), 3u);
    for (const auto &b : model.machines) {
      double s = 0.0;
      for (std::size_t i = 0; i < b.alpha.size(); ++i) {
        EXPECT_GE(b.alpha[i], 0.0);
        EXPECT_LE(b.alpha[i], C);
        s += b.alpha[i] * b.y[i];
      }
      EXPECT_LT(std::abs(s), 1e-6);
      EXPECT_LT(b.kkt_gap, 1e-3);
      ASSERT_FALSE(b.dual_trace.empty());
      for (std::size_t t = 1; t < b.dual_trace.size(); ++t)
        EXPECT_GE(b.dual_trace[t], b.dual_trace[t - 1] - 1e-12);
    }
  }
}

TEST(Svm, XorWithRbf) {
  const auto m = xor_data(2);
  EXPECT_GT(accuracy(svm_predict(svm_fit(m, 10.0, 1.0), m.rows), m.labels), 0.95);
}

TEST(Svm, RejectsBadParameters) {
  const auto m = blobs({{0, 0}, {1, 1}}, 5, 0.1, 0);
  EXPECT_THROW(svm_fit(m, 0.0, 1.0), UsageError);
  EXPECT_THROW(svm_fit(m, 1.0, -1.0), UsageError);
  SvmOptions o;
  o.max_iter = 1;
  EXPECT_THROW(svm_fit(xor_data(1), 10.0, 1.0, o), NumericError);
}

// MLP

TEST(Mlp, GradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto model = mlp_init({2, 3, 2}, MlpOutput::softmax, 0.01, seed);
    for (auto &b : model.biases)
      b.setConstant(0.05);
    Eigen::MatrixXd x(2, 4);
    x << 0.3, -0.7, 1.1, 0.2, 0.9, 0.4, -0.5, -1.3;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(2, 4);
    t(0, 0) = t(1, 1) = t(0, 2) = t(1, 3) = 1.0;
    const auto g = mlp_loss_and_gradient(model, x, t);
    const double h = 1e-6;
    auto rel = [](double a, double n) {
      return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-6});
    };
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
      for (Eigen::Index i = 0; i < model.weights[l].size(); ++i) {
        auto plus = model, minus = model;
        plus.weights[l].data()[i] += h;
        minus.weights[l].data()[i] -= h;
        const double num = (mlp_loss_and_gradient(plus, x, t).loss -
                            mlp_loss_and_gradient(minus, x, t).loss) / (2 * h);
        EXPECT_LT(rel(g.weights[l].data()[i], num), 1e-4);
      }
      for (Eigen::Index i = 0; i < model.biases[l].size(); ++i) {
        auto plus = model, minus = model;
        plus.biases[l](i) += h;
        minus.biases[l](i) -= h;
        const double num = (mlp_loss_and_gradient(plus, x, t).loss -
                            mlp_loss_and_gradient(minus, x, t).loss) / (2 * h);
        EXPECT_LT(rel(g.biases[l](i), num), 1e-4);
      }
    }
  }
}

TEST(Mlp, ZeroOutputLayerGivesUniformSoftmax) {
  auto model = mlp_init({3, 5, 4}, MlpOutput::softmax, 0.0, 1);
  model.weights.back().setZero();
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(3, 6);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(4, 6);
  for (Eigen::Index i = 0; i < 6; ++i)
    t(i % 4, i) = 1.0;
  EXPECT_NEAR(mlp_loss_and_gradient(model, x, t).loss, std::log(4.0), 1e-12);
}

TEST(Mlp, SeparableBlobsAndDeterminism) {
  const auto m = blobs({{-2, 0}, {2, 0}}, 50, 0.5, 7);
  MlpOptions o;
  o.hidden = {10};
  o.epochs = 200;
  const auto model = mlp_fit(m, o, 3);
  EXPECT_GE(accuracy(mlp_predict(model, m.rows), m.labels), 0.99);
  EXPECT_LT(model.loss_trace.back(), model.loss_trace.front());
  o.epochs = 5;
  EXPECT_EQ(mlp_fit(m, o, 3).weights[0], mlp_fit(m, o, 3).weights[0]);
}

TEST(Mlp, RegressorFitsLine) {
  Rows x;
  std::vector<double> y;
  for (int i = 0; i < 64; ++i) {
    const double v = -1.0 + 2.0 * i / 63.0;
    x.push_back({v});
    y.push_back(0.5 * v + 0.25);
  }
  MlpOptions o;
  o.hidden = {8};
  o.epochs = 400;
  o.learning_rate = 1e-2;
  o.l2_alpha = 0.0;
  const auto model = mlp_fit_regressor(x, y, o, 1);
  EXPECT_LT(rmse(mlp_predict_values(model, x), y), 0.05);
}

// Forest

TEST(Forest, LabelCopyDominates) {
  const auto m = label_copy_data(9, 1);
  const auto imp = forest_importance(m, 50, 8, 2);
  ASSERT_EQ(imp.size(), 10u);
  EXPECT_GT(imp[0], 0.8);
  EXPECT_NEAR(std::accumulate(imp.begin(), imp.end(), 0.0), 1.0, 1e-9);
  for (double v : imp)
    EXPECT_GE(v, 0.0);
  const auto model = forest_fit(m, 50, 8, 2);
  EXPECT_EQ(accuracy(forest_predict(model, m.rows), m.labels), 1.0);
}

TEST(Forest, ConstantFeatureUnused) {
  auto m = label_copy_data(3, 4);
  for (auto &r : m.rows)
    r.push_back(2.5);
  m.column_names.push_back("constant");
  const auto imp = forest_importance(m, 50, 8, 1);
  EXPECT_LT(imp.back(), 0.01);
}

TEST(Forest, PermutingAColumnMovesItsImportance) {
  const auto m = label_copy_data(9, 5);
  const auto base = forest_importance(m, 50, 8, 3);
  auto shuffled = m;
  std::vector<double> col;
  for (const auto &r : m.rows)
    col.push_back(r[0]);
  Rng rng(9);
  std::shuffle(col.begin(), col.end(), rng);
  for (std::size_t i = 0; i < col.size(); ++i)
    shuffled.rows[i][0] = col[i];
  const auto after = forest_importance(shuffled, 50, 8, 3);
  const double own = std::abs(after[0] - base[0]);
  for (std::size_t j = 1; j < base.size(); ++j)
    EXPECT_GT(own, 5.0 * std::abs(after[j] - base[j])) << "feature " << j;
}

TEST(Forest, Deterministic) {
  const auto m = label_copy_data(4, 2);
  EXPECT_EQ(forest_importance(m, 20, 5, 1), forest_importance(m, 20, 5, 1));
  EXPECT_THROW(forest_importance(m, 0, 5, 1), UsageError);
}

// Linear family

TEST(Linear, ExactLine) {
  Rows x;
  std::vector<double> y;
  for (int i = 0; i < 10; ++i) {
    x.push_back({static_cast<double>(i) - 4.5});
    y.push_back(2.0 * (static_cast<double>(i) - 4.5));
  }
  LinearOptions o;
  o.penalty = Penalty::none;
  for (auto solver : {LinearSolver::closed_form, LinearSolver::coordinate_descent}) {
    o.solver = solver;
    const auto m = linear_fit(x, y, o);
    EXPECT_NEAR(m.w[0], 2.0, 1e-9);
    EXPECT_NEAR(m.intercept, 0.0, 1e-9);
  }
}

TEST(Linear, RidgeShrinksToZero) {
  const auto x = random_design(50, 3, 1);
  const auto y = linear_target(x, {1, -2, 3}, 0.1, 1);
  LinearOptions o;
  o.penalty = Penalty::ridge;
  o.strength = 1e6;
  const auto m = linear_fit(x, y, o);
  double norm = 0;
  for (double w : m.w)
    norm += w * w;
  EXPECT_LT(std::sqrt(norm), 0.01);
}

TEST(Linear, RidgeDescentMatchesClosedForm) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto x = random_design(60, 4, seed);
    const auto y = linear_target(x, {0.5, -1, 2, 0.1}, 0.3, seed);
    LinearOptions o;
    o.penalty = Penalty::ridge;
    o.strength = 0.5 + static_cast<double>(seed);
    o.solver = LinearSolver::closed_form;
    const auto a = linear_fit(x, y, o);
    o.solver = LinearSolver::coordinate_descent;
    expect_close(a, linear_fit(x, y, o), 1e-6);
  }
}

TEST(Linear, LassoOrthonormalOracle) {
  // Centered orthonormal design from a QR factorization.
  const std::size_t n = 40, p = 4;
  Eigen::MatrixXd a(n, p);
  Rng rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    a.data()[i] = g(rng);
  a.rowwise() -= a.colwise().mean();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
  Rows x(n, std::vector<double>(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      x[i][j] = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  const std::vector<double> beta = {3.0, -0.4, 1.2, 0.05};
  auto y = linear_target(x, beta, 0.2, 4);
  LinearOptions o;
  o.penalty = Penalty::lasso;
  o.strength = 1.0;
  const auto m = linear_fit(x, y, o);
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  for (std::size_t j = 0; j < p; ++j) {
    double ols = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      ols += x[i][j] * (y[i] - ybar);
    const double expected = std::copysign(std::max(std::abs(ols) - 0.5, 0.0), ols);
    EXPECT_NEAR(m.w[j], expected, 1e-8);
  }
  EXPECT_EQ(soft_threshold(0.3, 0.5), 0.0);
  EXPECT_EQ(soft_threshold(-2.0, 0.5), -1.5);
}

TEST(Linear, ElasticNetDegenerateCases) {
  const auto x = random_design(80, 3, 6);
  const auto y = linear_target(x, {1.5, 0.0, -0.8}, 0.2, 6);
  auto fit = [&](Penalty p, double s, double mix) {
    LinearOptions o;
    o.penalty = p;
    o.strength = s;
    o.mix = mix;
    o.solver = LinearSolver::coordinate_descent;
    return linear_fit(x, y, o);
  };
  expect_close(fit(Penalty::elasticnet, 2.0, 0.0), fit(Penalty::ridge, 2.0, 0.5), 1e-6);
  expect_close(fit(Penalty::elasticnet, 2.0, 1.0), fit(Penalty::lasso, 2.0, 0.5), 1e-6);
  expect_close(fit(Penalty::elasticnet, 0.0, 0.5), fit(Penalty::none, 0.0, 0.5), 1e-6);
  const auto en = fit(Penalty::elasticnet, 2.0, 0.5);
  EXPECT_DOUBLE_EQ(en.z1, 1.0);
  EXPECT_DOUBLE_EQ(en.z2, 1.0);
}

TEST(Linear, SingularDesignIsNumericError) {
  Rows x;
  std::vector<double> y;
  for (int i = 0; i < 10; ++i) {
    x.push_back({static_cast<double>(i), 2.0 * i});
    y.push_back(i);
  }
  LinearOptions o;
  o.penalty = Penalty::none;
  EXPECT_THROW(linear_fit(x, y, o), NumericError);
  o.penalty = Penalty::ridge;
  EXPECT_NO_THROW(linear_fit(x, y, o));
}

TEST(Linear, StandardizedTargetsHaveZeroIntercept) {
  auto data = make_matrix(random_design(100, 3, 8), std::vector<int>(100, 0), 1);
  const auto xs = standardize(data);
  std::vector<double> y;
  for (const auto &r : xs.rows)
    y.push_back(0.6 * r[1] + 0.1 * r[2]);
  const double mu = std::accumulate(y.begin(), y.end(), 0.0) / 100.0;
  for (auto &v : y)
    v -= mu;
  const auto m = linear_fit(xs.rows, y, {});
  EXPECT_LT(std::abs(m.intercept), 1e-10);
  const auto e = export_error_model(m, "HeadRoll20");
  EXPECT_EQ(e.b0, m.intercept);
  EXPECT_EQ(e.b[1], m.w[1]);
  LinearOptions two;
  two.degree = 2;
  EXPECT_THROW(export_error_model(linear_fit(xs.rows, y, two), "x"), UsageError);
}

TEST(Linear, PolynomialTerms) {
  EXPECT_EQ(polynomial_terms(3, 1).size(), 3u);
  EXPECT_EQ(polynomial_terms(3, 2).size(), 9u);
  EXPECT_EQ(polynomial_terms(2, 3).size(), 9u);
  const auto t = polynomial_terms(2, 2);
  const auto e = expand_polynomial({{2.0, 3.0}}, t);
  std::multiset<double> got(e[0].begin(), e[0].end());
  EXPECT_EQ(got, (std::multiset<double>{2, 3, 4, 6, 9}));
  EXPECT_THROW(polynomial_terms(2, 0), UsageError);
}

TEST(Rmse, Examples) {
  EXPECT_EQ(rmse({1, 2, 3}, {1, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(rmse({1, 2}, {3, 4}), 2.0);
  EXPECT_THROW(rmse({1}, {1, 2}), UsageError);
}

// Persistence

TEST(Persistence, ClassifierRoundTripIsBitIdentical) {
  const auto m = blobs({{0, 0, 0}, {2, 0, 1}, {0, 2, -1}}, 20, 0.6, 5);
  for (auto family : {ModelFamily::knn, ModelFamily::svm, ModelFamily::mlp,
                      ModelFamily::forest}) {
    ModelSpec spec;
    spec.family = family;
    spec.mlp.hidden = {6};
    spec.mlp.epochs = 10;
    spec.n_estimators = 10;
    const auto clf = fit_classifier(m, spec);
    const auto text = format_classifier(clf);
    const auto back = parse_classifier(text);
    EXPECT_EQ(format_classifier(back), text) << to_string(family);
    const auto queries = random_design(30, 3, 77);
    EXPECT_EQ(predict(back, queries), predict(clf, queries)) << to_string(family);
  }
  EXPECT_THROW(parse_classifier("garbage\n"), DataError);
}

TEST(Persistence, LinearModelRoundTrip) {
  const auto x = random_design(40, 3, 2);
  const auto y = linear_target(x, {1, 2, 3}, 0.1, 2);
  LinearOptions o;
  o.degree = 2;
  const auto m = linear_fit(x, y, o);
  Standardization s{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
  Standardization ys{{0.0}, {1.0}};
  const auto text = format_linear_model(m, s, ys);
  const auto back = parse_linear_model(text);
  EXPECT_EQ(linear_predict(back.model, x), linear_predict(m, x));
  EXPECT_EQ(format_linear_model(back.model, back.x_scale, back.y_scale), text);
}
