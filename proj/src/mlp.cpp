// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/error.hpp"
#include "mlgaze/learn.hpp"
#include "mlgaze/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mlgaze {

namespace {

Eigen::MatrixXd to_columns(const Rows &rows, std::size_t width) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(width),
                    static_cast<Eigen::Index>(rows.size()));
  for (std::size_t c = 0; c < rows.size(); ++c) {
    if (rows[c].size() != width)
      throw UsageError("row width does not match the network input");
    for (std::size_t r = 0; r < width; ++r)
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[c][r];
  }
  return x;
}

void softmax_columns(Eigen::MatrixXd &z) {
  for (Eigen::Index c = 0; c < z.cols(); ++c) {
    auto col = z.col(c);
    col.array() -= col.maxCoeff();
    col = col.array().exp().matrix();
    col /= col.sum();
  }
}

/// Activations of every layer; the last entry is the network output.
std::vector<Eigen::MatrixXd> forward_all(const MlpModel &m,
                                         const Eigen::MatrixXd &x) {
  std::vector<Eigen::MatrixXd> act;
  act.reserve(m.weights.size() + 1);
  act.push_back(x);
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    Eigen::MatrixXd z = m.weights[l] * act.back();
    z.colwise() += m.biases[l];
    if (l + 1 < m.weights.size())
      z = z.cwiseMax(0.0);
    else if (m.output == MlpOutput::softmax)
      softmax_columns(z);
    act.push_back(std::move(z));
  }
  return act;
}

std::vector<int> full_layers(std::size_t in, const std::vector<int> &hidden,
                             std::size_t out) {
  std::vector<int> layers{static_cast<int>(in)};
  layers.insert(layers.end(), hidden.begin(), hidden.end());
  layers.push_back(static_cast<int>(out));
  return layers;
}

MlpModel train_model(MlpModel model, const Eigen::MatrixXd &x,
               const Eigen::MatrixXd &t, const MlpOptions &opts,
               std::uint64_t seed) {
  if (opts.epochs < 1 || opts.batch_size < 1 || !(opts.learning_rate > 0.0))
    throw UsageError("MLP needs positive epochs, batch size and learning rate");
  const auto n = static_cast<std::size_t>(x.cols());
  const auto L = model.weights.size();
  std::vector<Eigen::MatrixXd> mW, vW;
  std::vector<Eigen::VectorXd> mb, vb;
  for (std::size_t l = 0; l < L; ++l) {
    mW.push_back(Eigen::MatrixXd::Zero(model.weights[l].rows(), model.weights[l].cols()));
    vW.push_back(mW.back());
    mb.push_back(Eigen::VectorXd::Zero(model.biases[l].size()));
    vb.push_back(mb.back());
  }

  Rng rng(derive_seed(seed, 1));
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  double b1t = 1.0;
  double b2t = 1.0;
  const auto batch = static_cast<std::size_t>(opts.batch_size);
  Eigen::MatrixXd xb, tb;

  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += batch) {
      const auto len = std::min(batch, n - start);
      xb.resize(x.rows(), static_cast<Eigen::Index>(len));
      tb.resize(t.rows(), static_cast<Eigen::Index>(len));
      for (std::size_t c = 0; c < len; ++c) {
        xb.col(static_cast<Eigen::Index>(c)) = x.col(order[start + c]);
        tb.col(static_cast<Eigen::Index>(c)) = t.col(order[start + c]);
      }
      const auto g = mlp_loss_and_gradient(model, xb, tb);
      if (!std::isfinite(g.loss))
        throw NumericError("MLP loss became " + std::to_string(g.loss) +
                           " at epoch " + std::to_string(epoch + 1) +
                           "; lower the learning rate or standardize inputs");
      epoch_loss += g.loss * static_cast<double>(len);

      b1t *= opts.beta1;
      b2t *= opts.beta2;
      const double step = opts.learning_rate * std::sqrt(1.0 - b2t) / (1.0 - b1t);
      for (std::size_t l = 0; l < L; ++l) {
        mW[l] = opts.beta1 * mW[l] + (1.0 - opts.beta1) * g.weights[l];
        vW[l] = opts.beta2 * vW[l] +
                (1.0 - opts.beta2) * g.weights[l].cwiseProduct(g.weights[l]);
        model.weights[l].array() -=
            step * mW[l].array() / (vW[l].array().sqrt() + opts.epsilon);
        mb[l] = opts.beta1 * mb[l] + (1.0 - opts.beta1) * g.biases[l];
        vb[l] = opts.beta2 * vb[l] +
                (1.0 - opts.beta2) * g.biases[l].cwiseProduct(g.biases[l]);
        model.biases[l].array() -=
            step * mb[l].array() / (vb[l].array().sqrt() + opts.epsilon);
      }
    }
    model.loss_trace.push_back(epoch_loss / static_cast<double>(n));
  }
  return model;
}

} // namespace

MlpModel mlp_init(const std::vector<int> &layers, MlpOutput output,
                  double l2_alpha, std::uint64_t seed) {
  if (layers.size() < 2)
    throw UsageError("an MLP needs input and output layers");
  for (int w : layers)
    if (w < 1)
      throw UsageError("layer widths must be >= 1");
  if (!(l2_alpha >= 0.0))
    throw UsageError("l2_alpha must be >= 0");
  MlpModel m;
  m.layers = layers;
  m.output = output;
  m.l2_alpha = l2_alpha;
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layers[l]));
    std::uniform_real_distribution<double> u(-bound, bound);
    Eigen::MatrixXd w(layers[l + 1], layers[l]);
    for (Eigen::Index c = 0; c < w.cols(); ++c)
      for (Eigen::Index r = 0; r < w.rows(); ++r)
        w(r, c) = u(rng);
    m.weights.push_back(std::move(w));
    m.biases.push_back(Eigen::VectorXd::Zero(layers[l + 1]));
  }
  return m;
}

MlpGradient mlp_loss_and_gradient(const MlpModel &model,
                                  const Eigen::MatrixXd &x,
                                  const Eigen::MatrixXd &targets) {
  const auto act = forward_all(model, x);
  const double n = static_cast<double>(x.cols());
  const auto &out = act.back();
  const auto L = model.weights.size();

  MlpGradient g;
  Eigen::MatrixXd delta;
  if (model.output == MlpOutput::softmax) {
    g.loss = -(targets.array() * out.array().max(1e-300).log()).sum() / n;
    delta = (out - targets) / n;
  } else {
    const Eigen::MatrixXd diff = out - targets;
    g.loss = diff.squaredNorm() / n;
    delta = 2.0 * diff / n;
  }
  for (const auto &w : model.weights)
    g.loss += model.l2_alpha * w.squaredNorm();

  g.weights.resize(L);
  g.biases.resize(L);
  for (std::size_t l = L; l-- > 0;) {
    g.weights[l] = delta * act[l].transpose() + 2.0 * model.l2_alpha * model.weights[l];
    g.biases[l] = delta.rowwise().sum();
    if (l > 0) {
      Eigen::MatrixXd back = model.weights[l].transpose() * delta;
      delta = back.cwiseProduct((act[l].array() > 0.0).cast<double>().matrix());
    }
  }
  return g;
}

Eigen::MatrixXd mlp_forward(const MlpModel &model, const Rows &rows) {
  const auto x = to_columns(rows, static_cast<std::size_t>(model.layers.front()));
  return forward_all(model, x).back();
}

MlpModel mlp_fit(const LabeledMatrix &train, const MlpOptions &opts,
                 std::uint64_t seed) {
  train.validate();
  if (train.size() == 0)
    throw UsageError("cannot train on an empty matrix");
  const auto k = train.n_classes();
  auto model = mlp_init(full_layers(train.cols(), opts.hidden, k),
                        MlpOutput::softmax, opts.l2_alpha, seed);
  const auto x = to_columns(train.rows, train.cols());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), x.cols());
  for (std::size_t i = 0; i < train.size(); ++i)
    t(train.labels[i], static_cast<Eigen::Index>(i)) = 1.0;
  return train_model(std::move(model), x, t, opts, seed);
}

MlpModel mlp_fit_regressor(const Rows &rows, const std::vector<double> &y,
                           const MlpOptions &opts, std::uint64_t seed) {
  if (rows.empty() || rows.size() != y.size())
    throw UsageError("regressor needs equally many rows and targets");
  auto model = mlp_init(full_layers(rows.front().size(), opts.hidden, 1),
                        MlpOutput::linear, opts.l2_alpha, seed);
  const auto x = to_columns(rows, rows.front().size());
  Eigen::MatrixXd t(1, x.cols());
  for (std::size_t i = 0; i < y.size(); ++i)
    t(0, static_cast<Eigen::Index>(i)) = y[i];
  return train_model(std::move(model), x, t, opts, seed);
}

std::vector<int> mlp_predict(const MlpModel &model, const Rows &rows) {
  if (model.output != MlpOutput::softmax)
    throw UsageError("class prediction needs a softmax network");
  const auto out = mlp_forward(model, rows);
  std::vector<int> labels(rows.size());
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    Eigen::Index best = 0;
    out.col(c).maxCoeff(&best);
    labels[static_cast<std::size_t>(c)] = static_cast<int>(best);
  }
  return labels;
}

std::vector<double> mlp_predict_values(const MlpModel &model, const Rows &rows) {
  const auto out = mlp_forward(model, rows);
  std::vector<double> v(rows.size());
  for (Eigen::Index c = 0; c < out.cols(); ++c)
    v[static_cast<std::size_t>(c)] = out(0, c);
  return v;
}

} // namespace mlgaze
