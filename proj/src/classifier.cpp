// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/error.hpp"
#include "mlgaze/learn.hpp"
#include "mlgaze/text.hpp"

#include <map>
#include <sstream>

namespace mlgaze {

namespace {

template <class... Fs> struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs> Overload(Fs...) -> Overload<Fs...>;

std::string join(const std::vector<double> &v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      out += ' ';
    out += text::format_double(v[i]);
  }
  return out;
}

template <class T> std::string join_ints(const std::vector<T> &v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join_names(const std::vector<std::string> &v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      out += ',';
    out += v[i];
  }
  return out;
}

class KeyValues {
public:
  explicit KeyValues(std::string_view content, std::string_view magic) {
    const auto all = text::lines(content);
    if (all.empty() || text::trim(all.front()) != magic)
      throw DataError("not a model file: expected '" + std::string(magic) + "'");
    for (std::size_t i = 1; i < all.size(); ++i) {
      const auto line = text::trim(all[i]);
      if (line.empty() || line.front() == '#')
        continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw DataError("model file line " + std::to_string(i + 1) +
                        ": expected key=value");
      kv_[std::string(line.substr(0, eq))] = std::string(line.substr(eq + 1));
    }
  }

  const std::string &str(const std::string &key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end())
      throw DataError("model file is missing '" + key + "'");
    return it->second;
  }

  bool has(const std::string &key) const { return kv_.count(key) > 0; }

  std::vector<double> doubles(const std::string &key) const {
    std::vector<double> out;
    for (auto f : text::split(str(key), ' ')) {
      if (text::trim(f).empty())
        continue;
      const auto v = text::parse_double(f);
      if (!v)
        throw DataError("model file: bad number in '" + key + "'");
      out.push_back(*v);
    }
    return out;
  }

  double number(const std::string &key) const {
    const auto v = doubles(key);
    if (v.size() != 1)
      throw DataError("model file: '" + key + "' must hold one number");
    return v[0];
  }

  long long integer(const std::string &key) const {
    const auto v = text::parse_int(str(key));
    if (!v)
      throw DataError("model file: '" + key + "' must be an integer");
    return *v;
  }

  std::vector<int> ints(const std::string &key) const {
    std::vector<int> out;
    for (auto f : text::split(str(key), ' ')) {
      if (text::trim(f).empty())
        continue;
      const auto v = text::parse_int(f);
      if (!v)
        throw DataError("model file: bad integer in '" + key + "'");
      out.push_back(static_cast<int>(*v));
    }
    return out;
  }

  std::vector<std::string> names(const std::string &key) const {
    std::vector<std::string> out;
    if (str(key).empty())
      return out;
    for (auto f : text::split(str(key), ','))
      out.emplace_back(text::trim(f));
    return out;
  }

private:
  std::map<std::string, std::string> kv_;
};

constexpr std::string_view kClassifierMagic = "mlgaze-classifier 1";
constexpr std::string_view kLinearMagic = "mlgaze-linear 1";

std::string matrix_values(const Eigen::MatrixXd &m) {
  std::vector<double> v;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      v.push_back(m(r, c));
  return join(v);
}

} // namespace

std::string_view to_string(ModelFamily f) {
  switch (f) {
  case ModelFamily::knn:
    return "knn";
  case ModelFamily::svm:
    return "svm";
  case ModelFamily::mlp:
    return "mlp";
  case ModelFamily::forest:
    return "forest";
  }
  return "?";
}

std::optional<ModelFamily> parse_model_family(std::string_view t) {
  const auto s = text::lower(text::trim(t));
  for (auto f : {ModelFamily::knn, ModelFamily::svm, ModelFamily::mlp,
                 ModelFamily::forest})
    if (s == to_string(f))
      return f;
  if (s == "rf" || s == "random_forest")
    return ModelFamily::forest;
  return std::nullopt;
}

Classifier fit_classifier(const LabeledMatrix &train, const ModelSpec &spec) {
  train.validate();
  Classifier clf;
  clf.spec = spec;
  clf.class_names = train.class_names;
  clf.column_names = train.column_names;
  clf.scale = fit_standardization(train);
  const auto scaled = apply_standardization(train, clf.scale);
  switch (spec.family) {
  case ModelFamily::knn:
    clf.model = knn_fit(scaled, spec.k);
    break;
  case ModelFamily::svm:
    clf.model = svm_fit(scaled, spec.C, spec.gamma);
    break;
  case ModelFamily::mlp:
    clf.model = mlp_fit(scaled, spec.mlp, spec.seed);
    break;
  case ModelFamily::forest:
    clf.model = forest_fit(scaled, spec.n_estimators, spec.max_depth, spec.seed);
    break;
  }
  return clf;
}

std::vector<int> predict(const Classifier &clf, const Rows &rows) {
  const auto x = clf.scale.apply(rows);
  return std::visit(
      Overload{[&](const KnnModel &m) { return knn_predict(m, x); },
               [&](const SvmModel &m) { return svm_predict(m, x); },
               [&](const MlpModel &m) { return mlp_predict(m, x); },
               [&](const ForestModel &m) { return forest_predict(m, x); }},
      clf.model);
}

std::string format_classifier(const Classifier &clf) {
  std::ostringstream out;
  const auto &s = clf.spec;
  out << kClassifierMagic << '\n'
      << "family=" << to_string(s.family) << '\n'
      << "classes=" << join_names(clf.class_names) << '\n'
      << "columns=" << join_names(clf.column_names) << '\n'
      << "scale.mean=" << join(clf.scale.mean) << '\n'
      << "scale.sd=" << join(clf.scale.sd) << '\n'
      << "spec.k=" << s.k << '\n'
      << "spec.C=" << text::format_double(s.C) << '\n'
      << "spec.gamma=" << text::format_double(s.gamma) << '\n'
      << "spec.hidden=" << join_ints(s.mlp.hidden) << '\n'
      << "spec.alpha=" << text::format_double(s.mlp.l2_alpha) << '\n'
      << "spec.epochs=" << s.mlp.epochs << '\n'
      << "spec.n_estimators=" << s.n_estimators << '\n'
      << "spec.max_depth=" << s.max_depth << '\n'
      << "spec.seed=" << s.seed << '\n';

  std::visit(
      Overload{
          [&](const KnnModel &m) {
            out << "knn.k=" << m.k << '\n'
                << "knn.n=" << m.x.size() << '\n'
                << "knn.y=" << join_ints(m.y) << '\n';
            for (std::size_t i = 0; i < m.x.size(); ++i)
              out << "knn.x." << i << '=' << join(m.x[i]) << '\n';
          },
          [&](const SvmModel &m) {
            out << "svm.machines=" << m.machines.size() << '\n';
            for (std::size_t i = 0; i < m.machines.size(); ++i) {
              const auto &b = m.machines[i];
              const auto p = "svm." + std::to_string(i) + '.';
              out << p << "pair=" << b.positive << ' ' << b.negative << '\n'
                  << p << "bias=" << text::format_double(b.bias) << '\n'
                  << p << "coef=" << join(b.coef) << '\n';
              for (std::size_t j = 0; j < b.support.size(); ++j)
                out << p << "sv." << j << '=' << join(b.support[j]) << '\n';
            }
          },
          [&](const MlpModel &m) {
            out << "mlp.layers=" << join_ints(m.layers) << '\n'
                << "mlp.output=" << (m.output == MlpOutput::softmax ? "softmax" : "linear")
                << '\n';
            for (std::size_t l = 0; l < m.weights.size(); ++l)
              out << "mlp.W." << l << '=' << matrix_values(m.weights[l]) << '\n'
                  << "mlp.b." << l << '=' << matrix_values(m.biases[l]) << '\n';
          },
          [&](const ForestModel &m) {
            out << "forest.trees=" << m.trees.size() << '\n'
                << "forest.importances=" << join(m.importances) << '\n';
            for (std::size_t t = 0; t < m.trees.size(); ++t) {
              out << "forest." << t << '=';
              for (std::size_t k = 0; k < m.trees[t].size(); ++k) {
                const auto &n = m.trees[t][k];
                out << (k ? " " : "") << n.feature << ' '
                    << text::format_double(n.threshold) << ' ' << n.left << ' '
                    << n.right << ' ' << n.label;
              }
              out << '\n';
            }
          }},
      clf.model);
  return out.str();
}

Classifier parse_classifier(std::string_view content) {
  const KeyValues kv(content, kClassifierMagic);
  Classifier clf;
  const auto family = parse_model_family(kv.str("family"));
  if (!family)
    throw DataError("model file: unknown family '" + kv.str("family") + "'");
  auto &s = clf.spec;
  s.family = *family;
  s.k = static_cast<int>(kv.integer("spec.k"));
  s.C = kv.number("spec.C");
  s.gamma = kv.number("spec.gamma");
  s.mlp.hidden = kv.ints("spec.hidden");
  s.mlp.l2_alpha = kv.number("spec.alpha");
  s.mlp.epochs = static_cast<int>(kv.integer("spec.epochs"));
  s.n_estimators = static_cast<int>(kv.integer("spec.n_estimators"));
  s.max_depth = static_cast<int>(kv.integer("spec.max_depth"));
  s.seed = static_cast<std::uint64_t>(kv.integer("spec.seed"));
  clf.class_names = kv.names("classes");
  clf.column_names = kv.names("columns");
  clf.scale.mean = kv.doubles("scale.mean");
  clf.scale.sd = kv.doubles("scale.sd");
  if (clf.scale.mean.size() != clf.scale.sd.size())
    throw DataError("model file: standardization lengths differ");
  const auto n_classes = clf.class_names.size();
  const auto width = clf.scale.mean.size();
  auto check_row = [&](const std::vector<double> &r) {
    if (r.size() != width)
      throw DataError("model file: row width does not match the features");
  };

  switch (s.family) {
  case ModelFamily::knn: {
    KnnModel m;
    m.k = static_cast<int>(kv.integer("knn.k"));
    m.n_classes = n_classes;
    m.y = kv.ints("knn.y");
    const auto n = static_cast<std::size_t>(kv.integer("knn.n"));
    if (m.y.size() != n)
      throw DataError("model file: knn label count mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      m.x.push_back(kv.doubles("knn.x." + std::to_string(i)));
      check_row(m.x.back());
    }
    clf.model = std::move(m);
    break;
  }
  case ModelFamily::svm: {
    SvmModel m;
    m.C = s.C;
    m.gamma = s.gamma;
    m.n_classes = n_classes;
    const auto machines = static_cast<std::size_t>(kv.integer("svm.machines"));
    for (std::size_t i = 0; i < machines; ++i) {
      const auto p = "svm." + std::to_string(i) + '.';
      SvmBinary b;
      const auto pair = kv.ints(p + "pair");
      if (pair.size() != 2)
        throw DataError("model file: bad class pair");
      b.positive = pair[0];
      b.negative = pair[1];
      b.bias = kv.number(p + "bias");
      b.coef = kv.doubles(p + "coef");
      for (std::size_t j = 0; j < b.coef.size(); ++j) {
        b.support.push_back(kv.doubles(p + "sv." + std::to_string(j)));
        check_row(b.support.back());
      }
      m.machines.push_back(std::move(b));
    }
    clf.model = std::move(m);
    break;
  }
  case ModelFamily::mlp: {
    MlpModel m;
    m.layers = kv.ints("mlp.layers");
    m.output = kv.str("mlp.output") == "linear" ? MlpOutput::linear
                                                 : MlpOutput::softmax;
    m.l2_alpha = s.mlp.l2_alpha;
    for (std::size_t l = 0; l + 1 < m.layers.size(); ++l) {
      const auto w = kv.doubles("mlp.W." + std::to_string(l));
      const auto b = kv.doubles("mlp.b." + std::to_string(l));
      const auto rows = m.layers[l + 1];
      const auto cols = m.layers[l];
      if (w.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) ||
          b.size() != static_cast<std::size_t>(rows))
        throw DataError("model file: MLP layer " + std::to_string(l) +
                        " has the wrong size");
      Eigen::MatrixXd W(rows, cols);
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
          W(r, c) = w[static_cast<std::size_t>(r * cols + c)];
      m.weights.push_back(std::move(W));
      m.biases.push_back(Eigen::Map<const Eigen::VectorXd>(b.data(), rows));
    }
    clf.model = std::move(m);
    break;
  }
  case ModelFamily::forest: {
    ForestModel m;
    m.n_estimators = s.n_estimators;
    m.max_depth = s.max_depth;
    m.n_classes = n_classes;
    m.importances = kv.doubles("forest.importances");
    const auto trees = static_cast<std::size_t>(kv.integer("forest.trees"));
    for (std::size_t t = 0; t < trees; ++t) {
      const auto v = kv.doubles("forest." + std::to_string(t));
      if (v.size() % 5 != 0 || v.empty())
        throw DataError("model file: malformed tree " + std::to_string(t));
      std::vector<TreeNode> nodes;
      for (std::size_t k = 0; k < v.size(); k += 5)
        nodes.push_back({static_cast<int>(v[k]), v[k + 1], static_cast<int>(v[k + 2]),
                         static_cast<int>(v[k + 3]), static_cast<int>(v[k + 4])});
      m.trees.push_back(std::move(nodes));
    }
    clf.model = std::move(m);
    break;
  }
  }
  return clf;
}

void save_classifier(const Classifier &clf, const std::filesystem::path &path) {
  text::write_file(path, format_classifier(clf));
}

Classifier load_classifier(const std::filesystem::path &path) {
  return parse_classifier(text::read_file(path));
}

std::string format_linear_model(const LinearModel &model,
                                const Standardization &x_scale,
                                const Standardization &y_scale) {
  std::ostringstream out;
  out << kLinearMagic << '\n'
      << "penalty=" << to_string(model.penalty) << '\n'
      << "z1=" << text::format_double(model.z1) << '\n'
      << "z2=" << text::format_double(model.z2) << '\n'
      << "degree=" << model.degree << '\n'
      << "inputs=" << model.n_inputs << '\n'
      << "w=" << join(model.w) << '\n'
      << "intercept=" << text::format_double(model.intercept) << '\n'
      << "x.mean=" << join(x_scale.mean) << '\n'
      << "x.sd=" << join(x_scale.sd) << '\n'
      << "y.mean=" << join(y_scale.mean) << '\n'
      << "y.sd=" << join(y_scale.sd) << '\n';
  return out.str();
}

LoadedLinearModel parse_linear_model(std::string_view content) {
  const KeyValues kv(content, kLinearMagic);
  LoadedLinearModel out;
  auto &m = out.model;
  const auto penalty = parse_penalty(kv.str("penalty"));
  if (!penalty)
    throw DataError("model file: unknown penalty");
  m.penalty = *penalty;
  m.z1 = kv.number("z1");
  m.z2 = kv.number("z2");
  m.degree = static_cast<int>(kv.integer("degree"));
  m.n_inputs = static_cast<std::size_t>(kv.integer("inputs"));
  m.terms = polynomial_terms(m.n_inputs, m.degree);
  m.w = kv.doubles("w");
  if (m.w.size() != m.terms.size())
    throw DataError("model file: coefficient count does not match the terms");
  m.intercept = kv.number("intercept");
  out.x_scale = {kv.doubles("x.mean"), kv.doubles("x.sd")};
  out.y_scale = {kv.doubles("y.mean"), kv.doubles("y.sd")};
  return out;
}

} // namespace mlgaze
