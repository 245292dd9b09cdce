// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/error.hpp"
#include "mlgaze/learn.hpp"
#include "mlgaze/rng.hpp"
#include "mlgaze/text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mlgaze {

namespace {

void add_terms(std::size_t n, int degree, std::size_t from,
               std::vector<int> &current, std::vector<std::vector<int>> &out) {
  if (degree == 0) {
    std::vector<int> exps(n, 0);
    for (int i : current)
      ++exps[static_cast<std::size_t>(i)];
    out.push_back(std::move(exps));
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    current.push_back(static_cast<int>(i));
    add_terms(n, degree - 1, i, current, out);
    current.pop_back();
  }
}

Eigen::MatrixXd to_matrix(const Rows &x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto p = x.empty() ? 0 : static_cast<Eigen::Index>(x.front().size());
  Eigen::MatrixXd m(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto &row = x[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != p)
      throw UsageError("ragged design matrix");
    for (Eigen::Index j = 0; j < p; ++j)
      m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

Eigen::VectorXd closed_form(const Eigen::MatrixXd &X, const Eigen::VectorXd &y,
                            double z2) {
  const auto p = X.cols();
  Eigen::MatrixXd A = X.transpose() * X;
  if (z2 > 0.0) {
    A.diagonal().array() += z2;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    if (ldlt.info() != Eigen::Success)
      throw NumericError("ridge system could not be factorized");
    return ldlt.solve(X.transpose() * y);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-12);
  if (qr.rank() < p)
    throw NumericError("design matrix is singular (rank " +
                       std::to_string(qr.rank()) + " of " + std::to_string(p) +
                       "); use a ridge penalty");
  return qr.solve(y);
}

} // namespace

std::string_view to_string(Penalty p) {
  switch (p) {
  case Penalty::none:
    return "none";
  case Penalty::ridge:
    return "ridge";
  case Penalty::lasso:
    return "lasso";
  case Penalty::elasticnet:
    return "elasticnet";
  }
  return "?";
}

std::optional<Penalty> parse_penalty(std::string_view t) {
  auto s = text::lower(text::trim(t));
  std::erase(s, '_');
  if (s == "linear" || s == "ols")
    return Penalty::none;
  for (auto p : {Penalty::none, Penalty::ridge, Penalty::lasso, Penalty::elasticnet})
    if (s == to_string(p))
      return p;
  return std::nullopt;
}

std::vector<std::vector<int>> polynomial_terms(std::size_t n_inputs, int degree) {
  if (degree < 1)
    throw UsageError("polynomial degree must be >= 1");
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  for (int d = 1; d <= degree; ++d)
    add_terms(n_inputs, d, 0, current, out);
  return out;
}

Rows expand_polynomial(const Rows &x, const std::vector<std::vector<int>> &terms) {
  Rows out;
  out.reserve(x.size());
  for (const auto &row : x) {
    std::vector<double> e;
    e.reserve(terms.size());
    for (const auto &t : terms) {
      if (t.size() != row.size())
        throw UsageError("row width does not match the polynomial terms");
      double v = 1.0;
      for (std::size_t i = 0; i < t.size(); ++i)
        for (int k = 0; k < t[i]; ++k)
          v *= row[i];
      e.push_back(v);
    }
    out.push_back(std::move(e));
  }
  return out;
}

double soft_threshold(double v, double t) {
  if (v > t)
    return v - t;
  if (v < -t)
    return v + t;
  return 0.0;
}

LinearModel linear_fit(const Rows &x, const std::vector<double> &y,
                       const LinearOptions &opts) {
  if (x.empty() || x.size() != y.size())
    throw UsageError("linear fit needs equally many rows and targets");
  if (!(opts.strength >= 0.0) || !(opts.mix >= 0.0 && opts.mix <= 1.0))
    throw UsageError("penalty strength must be >= 0 and mix in [0, 1]");

  LinearModel m;
  m.penalty = opts.penalty;
  m.degree = opts.degree;
  m.n_inputs = x.front().size();
  m.terms = polynomial_terms(m.n_inputs, opts.degree);
  switch (opts.penalty) {
  case Penalty::none:
    break;
  case Penalty::ridge:
    m.z2 = opts.strength;
    break;
  case Penalty::lasso:
    m.z1 = opts.strength;
    break;
  case Penalty::elasticnet:
    m.z1 = opts.mix * opts.strength;
    m.z2 = (1.0 - opts.mix) * opts.strength;
    break;
  }

  const auto design = opts.degree == 1 ? x : expand_polynomial(x, m.terms);
  Eigen::MatrixXd X = to_matrix(design);
  Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(),
                                                        static_cast<Eigen::Index>(y.size()));
  if (!X.allFinite() || !yv.allFinite())
    throw DataError("regression inputs contain non-finite values");
  const Eigen::RowVectorXd x_mean = X.colwise().mean();
  const double y_mean = yv.mean();
  X.rowwise() -= x_mean;
  yv.array() -= y_mean;

  const bool use_cd =
      opts.solver == LinearSolver::coordinate_descent ||
      (opts.solver == LinearSolver::automatic && m.z1 > 0.0);
  if (opts.solver == LinearSolver::closed_form && m.z1 > 0.0)
    throw UsageError("an L1 penalty has no closed form; use coordinate descent");

  Eigen::VectorXd w = Eigen::VectorXd::Zero(X.cols());
  if (!use_cd) {
    w = closed_form(X, yv, m.z2);
  } else {
    const Eigen::VectorXd norms = X.colwise().squaredNorm();
    Eigen::VectorXd r = yv;
    int sweep = 0;
    for (; sweep < opts.max_iter; ++sweep) {
      double max_change = 0.0;
      for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double denom = norms(j) + m.z2;
        if (denom <= 0.0)
          continue;
        const double rho = X.col(j).dot(r) + norms(j) * w(j);
        const double next = soft_threshold(rho, m.z1 / 2.0) / denom;
        const double change = next - w(j);
        if (change != 0.0) {
          r.noalias() -= change * X.col(j);
          w(j) = next;
        }
        max_change = std::max(max_change, std::abs(change));
      }
      if (max_change < opts.tol)
        break;
    }
    if (sweep >= opts.max_iter)
      throw NumericError("coordinate descent did not converge in " +
                         std::to_string(opts.max_iter) + " sweeps");
    m.iterations = sweep + 1;
  }
  if (!w.allFinite())
    throw NumericError("regression produced non-finite coefficients");

  m.w.assign(w.data(), w.data() + w.size());
  m.intercept = y_mean - x_mean.dot(w);
  return m;
}

std::vector<double> linear_predict(const LinearModel &model, const Rows &x) {
  const auto design = model.degree == 1 ? x : expand_polynomial(x, model.terms);
  std::vector<double> out;
  out.reserve(design.size());
  for (const auto &row : design) {
    if (row.size() != model.w.size())
      throw UsageError("row width does not match the model");
    double v = model.intercept;
    for (std::size_t j = 0; j < row.size(); ++j)
      v += model.w[j] * row[j];
    out.push_back(v);
  }
  return out;
}

double rmse(const std::vector<double> &pred, const std::vector<double> &truth) {
  if (pred.size() != truth.size())
    throw UsageError("rmse needs equally long inputs");
  if (pred.empty())
    throw UsageError("rmse needs at least one value");
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    s += (pred[i] - truth[i]) * (pred[i] - truth[i]);
  return std::sqrt(s / static_cast<double>(pred.size()));
}

ErrorModel export_error_model(const LinearModel &model,
                              std::string_view condition) {
  if (model.n_inputs != 3 || model.degree != 1 || model.w.size() != 3)
    throw UsageError("an error model needs a degree-1 fit on exactly 3 "
                     "predictors [gaze angle, yaw, pitch]");
  ErrorModel e;
  e.condition = std::string(condition);
  e.b0 = model.intercept;
  std::copy(model.w.begin(), model.w.end(), e.b.begin());
  return e;
}

std::string format_error_models(const std::vector<ErrorModel> &models) {
  std::ostringstream out;
  out << "condition,b1,b2,b3,b0\n";
  for (const auto &m : models)
    out << m.condition << ',' << text::format_double(m.b[0]) << ','
        << text::format_double(m.b[1]) << ',' << text::format_double(m.b[2])
        << ',' << text::format_double(m.b0) << '\n';
  return out.str();
}

RegressionData regression_data(const GazeSession &session,
                               const CleanOptions &clean) {
  const auto angles = compute_gaze_angles(session);
  const auto errors = compute_errors(session);
  const auto drop = outlier_drop_mask(errors, clean);
  const auto cleaned = clean_errors(errors, clean);

  RegressionData out;
  std::size_t kept = 0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (drop[i])
      continue;
    out.x.push_back({angles[i].theta_gaze, angles[i].theta_yaw,
                     angles[i].theta_pitch});
    out.y.push_back(cleaned.frontal_err[kept]);
    ++kept;
  }
  if (kept != cleaned.size())
    throw DataError("cleaned series and drop mask disagree");
  return out;
}

RegressionFit fit_error_regression(const RegressionData &data,
                                   const LinearOptions &opts, double test_frac,
                                   std::uint64_t seed) {
  if (!(test_frac > 0.0 && test_frac < 1.0))
    throw UsageError("test fraction must lie in (0, 1)");
  const auto n = data.x.size();
  if (n != data.y.size() || n < 4)
    throw DataError("regression needs at least 4 samples");

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  auto n_test = static_cast<std::size_t>(std::llround(test_frac * static_cast<double>(n)));
  n_test = std::clamp<std::size_t>(n_test, 1, n - 2);

  LabeledMatrix xtr, ytr;
  Rows xte;
  std::vector<double> yte;
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = idx[k];
    if (k < n_test) {
      xte.push_back(data.x[i]);
      yte.push_back(data.y[i]);
    } else {
      xtr.rows.push_back(data.x[i]);
      ytr.rows.push_back({data.y[i]});
    }
  }
  xtr.column_names = regression_column_names();
  ytr.column_names = {"error"};

  RegressionFit fit;
  fit.x_scale = fit_standardization(xtr);
  fit.y_scale = fit_standardization(ytr);
  const auto xs = fit.x_scale.apply(xtr.rows);
  std::vector<double> ys;
  for (const auto &r : fit.y_scale.apply(ytr.rows))
    ys.push_back(r[0]);
  fit.model = linear_fit(xs, ys, opts);

  const auto pred_std = linear_predict(fit.model, fit.x_scale.apply(xte));
  std::vector<double> truth_std;
  for (double v : yte)
    truth_std.push_back((v - fit.y_scale.mean[0]) / fit.y_scale.sd[0]);
  fit.rmse_std = rmse(pred_std, truth_std);
  fit.baseline_std = rmse(std::vector<double>(yte.size(), 0.0), truth_std);

  for (double v : pred_std)
    fit.test_pred_deg.push_back(v * fit.y_scale.sd[0] + fit.y_scale.mean[0]);
  fit.test_truth_deg = yte;
  fit.rmse_deg = rmse(fit.test_pred_deg, yte);
  fit.baseline_deg =
      rmse(std::vector<double>(yte.size(), fit.y_scale.mean[0]), yte);
  return fit;
}

} // namespace mlgaze
