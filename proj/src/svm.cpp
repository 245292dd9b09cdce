// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/error.hpp"
#include "mlgaze/learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mlgaze {

namespace {

constexpr double kTau = 1e-12;

/// SMO with second-order working-set selection on one binary problem.
SvmBinary solve_pair(const Rows &x, const std::vector<double> &y, double C,
                     double gamma, const SvmOptions &opts) {
  const auto n = x.size();
  std::vector<double> K(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      K[i * n + j] = K[j * n + i] = rbf_kernel(x[i], x[j], gamma);
  auto k = [&](std::size_t i, std::size_t j) { return K[i * n + j]; };

  std::vector<double> a(n, 0.0);
  std::vector<double> G(n, -1.0);
  SvmBinary out;
  const auto inf = std::numeric_limits<double>::infinity();

  auto dual = [&] {
    double f = 0.0;
    for (std::size_t t = 0; t < n; ++t)
      f += a[t] * (G[t] - 1.0);
    return -0.5 * f;
  };

  int iter = 0;
  double gap = inf;
  for (;; ++iter) {
    // i maximizes -y G over the indices allowed to move up.
    double gmax = -inf;
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      const bool up = y[t] > 0 ? a[t] < C : a[t] > 0.0;
      if (up && -y[t] * G[t] >= gmax) {
        gmax = -y[t] * G[t];
        i = t;
      }
    }
    double gmax2 = -inf;
    double best_obj = inf;
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const bool low = y[t] > 0 ? a[t] > 0.0 : a[t] < C;
      if (!low)
        continue;
      gmax2 = std::max(gmax2, y[t] * G[t]);
      const double grad_diff = gmax + y[t] * G[t];
      if (i < n && grad_diff > 0.0) {
        const double quad = std::max(k(i, i) + k(t, t) - 2.0 * k(i, t), kTau);
        const double obj = -grad_diff * grad_diff / quad;
        if (obj <= best_obj) {
          best_obj = obj;
          j = t;
        }
      }
    }
    gap = gmax + gmax2;
    if (gap < opts.tol || i == n || j == n)
      break;
    if (iter >= opts.max_iter)
      throw NumericError("SVM did not converge after " +
                         std::to_string(opts.max_iter) +
                         " iterations (KKT gap " + std::to_string(gap) +
                         "); try a smaller C or rescale the features");

    const double old_ai = a[i];
    const double old_aj = a[j];
    if (y[i] != y[j]) {
      const double quad = std::max(k(i, i) + k(j, j) - 2.0 * k(i, j), kTau);
      const double delta = (-G[i] - G[j]) / quad;
      const double diff = a[i] - a[j];
      a[i] += delta;
      a[j] += delta;
      if (diff > 0.0) {
        if (a[j] < 0.0) {
          a[j] = 0.0;
          a[i] = diff;
        }
      } else if (a[i] < 0.0) {
        a[i] = 0.0;
        a[j] = -diff;
      }
      if (diff > 0.0) {
        if (a[i] > C) {
          a[i] = C;
          a[j] = C - diff;
        }
      } else if (a[j] > C) {
        a[j] = C;
        a[i] = C + diff;
      }
    } else {
      const double quad = std::max(k(i, i) + k(j, j) - 2.0 * k(i, j), kTau);
      const double delta = (G[i] - G[j]) / quad;
      const double sum = a[i] + a[j];
      a[i] -= delta;
      a[j] += delta;
      if (sum > C) {
        if (a[i] > C) {
          a[i] = C;
          a[j] = sum - C;
        }
      } else if (a[j] < 0.0) {
        a[j] = 0.0;
        a[i] = sum;
      }
      if (sum > C) {
        if (a[j] > C) {
          a[j] = C;
          a[i] = sum - C;
        }
      } else if (a[i] < 0.0) {
        a[i] = 0.0;
        a[j] = sum;
      }
    }

    const double dai = a[i] - old_ai;
    const double daj = a[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t)
      G[t] += y[t] * (y[i] * k(t, i) * dai + y[j] * k(t, j) * daj);
    out.dual_trace.push_back(dual());
  }

  // Bias from the free vectors, or the midpoint of the feasible interval.
  double ub = inf;
  double lb = -inf;
  double free_sum = 0.0;
  int n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * G[t];
    if (a[t] >= C) {
      if (y[t] < 0)
        ub = std::min(ub, yg);
      else
        lb = std::max(lb, yg);
    } else if (a[t] <= 0.0) {
      if (y[t] > 0)
        ub = std::min(ub, yg);
      else
        lb = std::max(lb, yg);
    } else {
      free_sum += yg;
      ++n_free;
    }
  }
  const double rho = n_free > 0 ? free_sum / n_free : (ub + lb) / 2.0;

  for (std::size_t t = 0; t < n; ++t)
    if (a[t] > 0.0) {
      out.support.push_back(x[t]);
      out.coef.push_back(a[t] * y[t]);
    }
  out.bias = -rho;
  out.alpha = std::move(a);
  out.y = y;
  out.kkt_gap = gap;
  out.iterations = iter;
  return out;
}

} // namespace

double rbf_kernel(const std::vector<double> &a, const std::vector<double> &b,
                  double gamma) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return std::exp(-gamma * s);
}

SvmModel svm_fit(const LabeledMatrix &train, double C, double gamma,
                 const SvmOptions &opts) {
  train.validate();
  if (!(C > 0.0) || !(gamma > 0.0))
    throw UsageError("SVM needs C > 0 and gamma > 0");
  const auto k = train.n_classes();
  std::vector<std::size_t> counts(k, 0);
  for (int l : train.labels)
    ++counts[static_cast<std::size_t>(l)];
  if (std::count_if(counts.begin(), counts.end(),
                    [](std::size_t c) { return c > 0; }) < 2)
    throw UsageError("SVM needs at least two classes with samples");

  SvmModel model;
  model.C = C;
  model.gamma = gamma;
  model.n_classes = k;
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = p + 1; q < k; ++q) {
      if (counts[p] == 0 || counts[q] == 0)
        continue;
      Rows x;
      std::vector<double> y;
      for (std::size_t r = 0; r < train.size(); ++r) {
        const auto l = static_cast<std::size_t>(train.labels[r]);
        if (l == p || l == q) {
          x.push_back(train.rows[r]);
          y.push_back(l == p ? 1.0 : -1.0);
        }
      }
      auto machine = solve_pair(x, y, C, gamma, opts);
      machine.positive = static_cast<int>(p);
      machine.negative = static_cast<int>(q);
      model.machines.push_back(std::move(machine));
    }
  return model;
}

double svm_decision(const SvmBinary &machine, double gamma,
                    const std::vector<double> &x) {
  double f = machine.bias;
  for (std::size_t s = 0; s < machine.support.size(); ++s)
    f += machine.coef[s] * rbf_kernel(machine.support[s], x, gamma);
  return f;
}

std::vector<int> svm_predict(const SvmModel &model, const Rows &rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  std::vector<int> votes(model.n_classes);
  std::vector<double> lost(model.n_classes);
  for (const auto &x : rows) {
    std::fill(votes.begin(), votes.end(), 0);
    std::fill(lost.begin(), lost.end(), 0.0);
    for (const auto &m : model.machines) {
      const double f = svm_decision(m, model.gamma, x);
      const auto win = static_cast<std::size_t>(f > 0.0 ? m.positive : m.negative);
      const auto lose = static_cast<std::size_t>(f > 0.0 ? m.negative : m.positive);
      ++votes[win];
      lost[lose] += std::abs(f);
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < votes.size(); ++c)
      if (votes[c] > votes[best] ||
          (votes[c] == votes[best] && lost[c] < lost[best]))
        best = c;
    out.push_back(static_cast<int>(best));
  }
  return out;
}

} // namespace mlgaze
