// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/tsne.hpp"

#include "mlgaze/error.hpp"
#include "mlgaze/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mlgaze {

namespace {

constexpr int kSearchSteps = 200;
constexpr double kPerplexityTol = 1e-7;

/// Fills `row` with p_{j|i} for precision beta; returns the entropy in nats.
double row_distribution(const std::vector<double> &d, std::size_t i, double beta,
                        double d_min, std::vector<double> &row) {
  double sum = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    row[j] = j == i ? 0.0 : std::exp(-beta * (d[j] - d_min));
    sum += row[j];
  }
  double weighted = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    row[j] /= sum;
    if (j != i)
      weighted += row[j] * (d[j] - d_min);
  }
  return std::log(sum) + beta * weighted;
}

} // namespace

Rows squared_distances(const Rows &x) {
  const auto n = x.size();
  Rows d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < x[i].size(); ++k) {
        const double t = x[i][k] - x[j][k];
        s += t * t;
      }
      d[i][j] = d[j][i] = s;
    }
  return d;
}

ConditionalAffinities conditional_affinities(const Rows &sq_distances,
                                             double perplexity) {
  const auto n = sq_distances.size();
  if (n < 2)
    throw UsageError("t-SNE needs at least 2 rows");
  if (!(perplexity > 0.0) || perplexity >= static_cast<double>(n - 1))
    throw UsageError("perplexity must lie in (0, N - 1)");

  ConditionalAffinities out;
  out.p.assign(n, std::vector<double>(n, 0.0));
  out.beta.assign(n, 1.0);
  out.perplexity.assign(n, 0.0);

  const double target = std::log(perplexity);
  for (std::size_t i = 0; i < n; ++i) {
    const auto &d = sq_distances[i];
    double d_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i)
        d_min = std::min(d_min, d[j]);

    double beta = 1.0;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double h = row_distribution(d, i, beta, d_min, out.p[i]);
    for (int step = 0; step < kSearchSteps; ++step) {
      if (std::abs(std::exp(h) - perplexity) < kPerplexityTol)
        break;
      // Entropy falls as beta grows.
      if (h > target) {
        lo = beta;
        beta = std::isinf(hi) ? beta * 2.0 : (beta + hi) / 2.0;
      } else {
        hi = beta;
        beta = (beta + lo) / 2.0;
      }
      h = row_distribution(d, i, beta, d_min, out.p[i]);
    }
    out.beta[i] = beta;
    out.perplexity[i] = std::exp(h);
  }
  return out;
}

Rows joint_affinities(const ConditionalAffinities &cond) {
  const auto n = cond.p.size();
  Rows p(n, std::vector<double>(n, 0.0));
  const double denom = 2.0 * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      p[i][j] = p[j][i] = (cond.p[i][j] + cond.p[j][i]) / denom;
  return p;
}

double kl_divergence(const Rows &p, const Rows &y) {
  const auto n = p.size();
  Rows num(n, std::vector<double>(n, 0.0));
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < y[i].size(); ++k) {
        const double t = y[i][k] - y[j][k];
        s += t * t;
      }
      num[i][j] = num[j][i] = 1.0 / (1.0 + s);
      z += 2.0 * num[i][j];
    }
  double kl = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || p[i][j] <= 0.0)
        continue;
      const double q = std::max(num[i][j] / z, 1e-300);
      kl += p[i][j] * std::log(p[i][j] / q);
    }
  return kl;
}

TsneResult tsne(const Rows &x, std::uint64_t seed, const TsneOptions &opts) {
  const auto n = x.size();
  if (opts.out_dims != 2)
    throw UsageError("t-SNE output dimension must be 2");
  if (!(opts.perplexity > 0.0) ||
      !(opts.perplexity < static_cast<double>(n) / 3.0))
    throw UsageError("perplexity " + std::to_string(opts.perplexity) +
                     " is infeasible for " + std::to_string(n) +
                     " rows; it must be below N/3");
  if (opts.iterations < 1 || !(opts.learning_rate > 0.0))
    throw UsageError("t-SNE needs positive iterations and learning rate");

  const auto cond = conditional_affinities(squared_distances(x), opts.perplexity);
  const auto p = joint_affinities(cond);
  const auto dims = static_cast<std::size_t>(opts.out_dims);

  Rng rng(seed);
  std::normal_distribution<double> init(0.0, 1e-2);
  Rows y(n, std::vector<double>(dims));
  for (auto &row : y)
    for (auto &v : row)
      v = init(rng);

  Rows velocity(n, std::vector<double>(dims, 0.0));
  Rows gains(n, std::vector<double>(dims, 1.0));
  Rows grad(n, std::vector<double>(dims, 0.0));
  Rows num(n, std::vector<double>(n, 0.0));

  TsneResult result;
  result.row_perplexity = cond.perplexity;
  auto record = [&](int iter) {
    result.kl_iterations.push_back(iter);
    result.kl_trace.push_back(kl_divergence(p, y));
  };
  record(0);

  for (int iter = 0; iter < opts.iterations; ++iter) {
    const double exaggeration =
        iter < opts.exaggeration_iters ? opts.exaggeration : 1.0;
    const double momentum = iter < opts.momentum_switch_iter
                                ? opts.initial_momentum
                                : opts.final_momentum;

    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < dims; ++k) {
          const double t = y[i][k] - y[j][k];
          s += t * t;
        }
        num[i][j] = num[j][i] = 1.0 / (1.0 + s);
        z += 2.0 * num[i][j];
      }

    for (std::size_t i = 0; i < n; ++i) {
      std::fill(grad[i].begin(), grad[i].end(), 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j)
          continue;
        const double mult =
            (exaggeration * p[i][j] - num[i][j] / z) * num[i][j];
        for (std::size_t k = 0; k < dims; ++k)
          grad[i][k] += 4.0 * mult * (y[i][k] - y[j][k]);
      }
    }

    std::vector<double> centroid(dims, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < dims; ++k) {
        auto &g = gains[i][k];
        const bool same_sign = (grad[i][k] > 0.0) == (velocity[i][k] > 0.0);
        g = std::max(same_sign ? g * 0.8 : g + 0.2, 0.01);
        velocity[i][k] =
            momentum * velocity[i][k] - opts.learning_rate * g * grad[i][k];
        y[i][k] += velocity[i][k];
        centroid[k] += y[i][k];
      }
    for (auto &row : y)
      for (std::size_t k = 0; k < dims; ++k)
        row[k] -= centroid[k] / static_cast<double>(n);

    const int done = iter + 1;
    if (done == opts.iterations || (opts.kl_every > 0 && done % opts.kl_every == 0))
      record(done);
  }
  for (const auto &row : y)
    for (double v : row)
      if (!std::isfinite(v))
        throw NumericError("t-SNE diverged; lower the learning rate");
  result.coords = std::move(y);
  return result;
}

TsneResult tsne(const LabeledMatrix &m, std::uint64_t seed,
                const TsneOptions &opts) {
  return tsne(m.rows, seed, opts);
}

} // namespace mlgaze
