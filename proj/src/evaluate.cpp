// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/evaluate.hpp"

#include "mlgaze/error.hpp"
#include "mlgaze/rng.hpp"
#include "mlgaze/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace mlgaze {

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos)
    return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + '"';
}

double sample_sd(const std::vector<double> &v, double mean) {
  if (v.size() < 2)
    return 0.0;
  double s = 0.0;
  for (double x : v)
    s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

} // namespace

long ConfusionMatrix::total() const {
  long t = 0;
  for (const auto &row : counts)
    t = std::accumulate(row.begin(), row.end(), t);
  return t;
}

double accuracy(const std::vector<int> &truth, const std::vector<int> &predicted) {
  if (truth.size() != predicted.size())
    throw UsageError("truth and predictions differ in length");
  if (truth.empty())
    throw UsageError("accuracy of an empty set");
  std::size_t hit = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    hit += truth[i] == predicted[i];
  return static_cast<double>(hit) / static_cast<double>(truth.size());
}

ClassificationReport classification_report(const std::vector<int> &truth,
                                           const std::vector<int> &predicted,
                                           std::size_t n_classes) {
  if (truth.size() != predicted.size())
    throw UsageError("truth and predictions differ in length");
  ClassificationReport rep;
  auto &cm = rep.confusion;
  cm.counts.assign(n_classes, std::vector<long>(n_classes, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (int l : {truth[i], predicted[i]})
      if (l < 0 || static_cast<std::size_t>(l) >= n_classes)
        throw DataError("label " + std::to_string(l) + " outside 0.." +
                        std::to_string(n_classes - 1));
    ++cm.counts[static_cast<std::size_t>(truth[i])]
               [static_cast<std::size_t>(predicted[i])];
  }

  auto &r = rep.rates;
  const auto total = static_cast<double>(truth.size());
  long diag = 0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    const double tp = static_cast<double>(cm.counts[c][c]);
    double fn = 0.0, fp = 0.0;
    for (std::size_t o = 0; o < n_classes; ++o)
      if (o != c) {
        fn += static_cast<double>(cm.counts[c][o]);
        fp += static_cast<double>(cm.counts[o][c]);
      }
    const double tn = total - tp - fn - fp;
    diag += cm.counts[c][c];

    ClassRates cr;
    cr.tpr = tp + fn > 0.0 ? tp / (tp + fn) : 0.0;
    cr.fnr = 1.0 - cr.tpr;
    cr.fpr = fp + tn > 0.0 ? fp / (fp + tn) : 0.0;
    cr.tnr = 1.0 - cr.fpr;
    if (tp + fp > 0.0) {
      cr.precision = tp / (tp + fp);
    } else {
      cr.precision_undefined = true;
      r.precision_warning = true;
    }
    r.per_class.push_back(cr);
    r.tpr += cr.tpr;
    r.fpr += cr.fpr;
    r.tnr += cr.tnr;
    r.fnr += cr.fnr;
    r.precision += cr.precision;
  }
  if (n_classes > 0) {
    const auto k = static_cast<double>(n_classes);
    r.tpr /= k;
    r.fpr /= k;
    r.tnr /= k;
    r.fnr /= k;
    r.precision /= k;
  }
  r.accuracy = total > 0.0 ? static_cast<double>(diag) / total : 0.0;
  return rep;
}

std::vector<int> stratified_folds(const std::vector<int> &labels,
                                  std::size_t n_classes, int k_folds,
                                  std::uint64_t seed) {
  if (k_folds < 2)
    throw UsageError("cross-validation needs at least 2 folds");
  std::vector<std::vector<std::size_t>> by_class(n_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= n_classes)
      throw DataError("label out of range");
    by_class[static_cast<std::size_t>(labels[i])].push_back(i);
  }
  Rng rng(seed);
  std::vector<int> folds(labels.size(), 0);
  std::size_t next = 0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    auto &members = by_class[c];
    if (members.empty())
      continue;
    if (members.size() < static_cast<std::size_t>(k_folds))
      throw UsageError("class " + std::to_string(c) + " has " +
                       std::to_string(members.size()) + " rows, fewer than " +
                       std::to_string(k_folds) + " folds");
    std::shuffle(members.begin(), members.end(), rng);
    for (auto i : members)
      folds[i] = static_cast<int>(next++ % static_cast<std::size_t>(k_folds));
  }
  return folds;
}

CvResult kfold_cv(const LabeledMatrix &m, const ModelSpec &spec, int k_folds,
                  std::uint64_t seed, const FoldHook &hook) {
  m.validate();
  CvResult out;
  out.folds = stratified_folds(m.labels, m.n_classes(), k_folds, seed);
  out.predicted.assign(m.size(), -1);
  for (int f = 0; f < k_folds; ++f) {
    FoldInfo info;
    info.fold = f;
    for (std::size_t i = 0; i < m.size(); ++i)
      (out.folds[i] == f ? info.test_indices : info.train_indices).push_back(i);
    ModelSpec fold_spec = spec;
    fold_spec.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(f));
    const auto clf = fit_classifier(m.subset(info.train_indices), fold_spec);
    info.scale = &clf.scale;
    if (hook)
      hook(info);

    Rows test_rows;
    std::vector<int> truth;
    for (auto i : info.test_indices) {
      test_rows.push_back(m.rows[i]);
      truth.push_back(m.labels[i]);
    }
    const auto pred = predict(clf, test_rows);
    for (std::size_t t = 0; t < pred.size(); ++t)
      out.predicted[info.test_indices[t]] = pred[t];
    out.fold_scores.push_back(accuracy(truth, pred));
  }
  out.mean = std::accumulate(out.fold_scores.begin(), out.fold_scores.end(), 0.0) /
             static_cast<double>(out.fold_scores.size());
  out.sd = sample_sd(out.fold_scores, out.mean);
  return out;
}

ParamGrid default_grid(ModelFamily family) {
  ParamGrid g;
  switch (family) {
  case ModelFamily::knn:
    g.k = {1, 3, 5, 7, 9};
    break;
  case ModelFamily::svm:
    g.C = {0.1, 1, 5, 10, 100};
    g.gamma = {0.1, 0.5, 1, 1.25, 2};
    break;
  case ModelFamily::mlp:
    g.hidden = {{50}, {100}, {50, 100, 50}, {100, 100}};
    g.alpha = {0.001, 0.01, 0.1, 0.5};
    break;
  case ModelFamily::forest:
    g.n_estimators = {200};
    g.max_depth = {8};
    break;
  }
  return g;
}

std::vector<ModelSpec> expand_grid(ModelFamily family, const ParamGrid &grid,
                                   const ModelSpec &base) {
  std::vector<ModelSpec> out;
  ModelSpec s = base;
  s.family = family;
  auto or_base = [](auto values, auto fallback) {
    if (values.empty())
      values.push_back(fallback);
    return values;
  };
  switch (family) {
  case ModelFamily::knn:
    for (int k : or_base(grid.k, base.k)) {
      s.k = k;
      out.push_back(s);
    }
    break;
  case ModelFamily::svm:
    for (double C : or_base(grid.C, base.C))
      for (double g : or_base(grid.gamma, base.gamma)) {
        s.C = C;
        s.gamma = g;
        out.push_back(s);
      }
    break;
  case ModelFamily::mlp:
    for (const auto &h : or_base(grid.hidden, base.mlp.hidden))
      for (double a : or_base(grid.alpha, base.mlp.l2_alpha)) {
        s.mlp.hidden = h;
        s.mlp.l2_alpha = a;
        out.push_back(s);
      }
    break;
  case ModelFamily::forest:
    for (int n : or_base(grid.n_estimators, base.n_estimators))
      for (int d : or_base(grid.max_depth, base.max_depth)) {
        s.n_estimators = n;
        s.max_depth = d;
        out.push_back(s);
      }
    break;
  }
  return out;
}

std::vector<std::vector<double>> param_tuple(const ModelSpec &s) {
  switch (s.family) {
  case ModelFamily::knn:
    return {{static_cast<double>(s.k)}};
  case ModelFamily::svm:
    return {{s.C}, {s.gamma}};
  case ModelFamily::mlp:
    return {std::vector<double>(s.mlp.hidden.begin(), s.mlp.hidden.end()),
            {s.mlp.l2_alpha}};
  case ModelFamily::forest:
    return {{static_cast<double>(s.n_estimators)},
            {static_cast<double>(s.max_depth)}};
  }
  return {};
}

std::string describe_params(const ModelSpec &s) {
  std::ostringstream out;
  switch (s.family) {
  case ModelFamily::knn:
    out << "k=" << s.k;
    break;
  case ModelFamily::svm:
    out << "C=" << text::format_double(s.C)
        << " gamma=" << text::format_double(s.gamma);
    break;
  case ModelFamily::mlp:
    out << "hidden=";
    for (std::size_t i = 0; i < s.mlp.hidden.size(); ++i)
      out << (i ? "x" : "") << s.mlp.hidden[i];
    out << " alpha=" << text::format_double(s.mlp.l2_alpha);
    break;
  case ModelFamily::forest:
    out << "n_estimators=" << s.n_estimators << " max_depth=" << s.max_depth;
    break;
  }
  return out.str();
}

GridResult grid_search(const LabeledMatrix &m, ModelFamily family,
                       const ParamGrid &grid, int k_folds, std::uint64_t seed,
                       const ModelSpec &base) {
  const auto points = expand_grid(family, grid, base);
  if (points.empty())
    throw UsageError("empty parameter grid");
  GridResult out;
  for (const auto &spec : points)
    out.table.push_back({spec, kfold_cv(m, spec, k_folds, seed)});
  for (std::size_t i = 1; i < out.table.size(); ++i) {
    const auto &cand = out.table[i];
    const auto &best = out.table[out.best];
    if (cand.cv.mean > best.cv.mean ||
        (cand.cv.mean == best.cv.mean &&
         param_tuple(cand.spec) < param_tuple(best.spec)))
      out.best = i;
  }
  return out;
}

std::vector<std::size_t> stratified_subsample(const std::vector<int> &labels,
                                              const std::vector<std::size_t> &pool,
                                              std::size_t size,
                                              std::uint64_t seed) {
  if (size > pool.size())
    throw UsageError("subsample of " + std::to_string(size) +
                     " rows from a pool of " + std::to_string(pool.size()));
  std::map<int, std::vector<std::size_t>> by_class;
  for (auto i : pool)
    by_class[labels.at(i)].push_back(i);
  Rng rng(seed);
  std::vector<std::pair<double, int>> rem;
  std::map<int, std::size_t> quota;
  std::size_t allotted = 0;
  for (auto &[c, members] : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    const double exact = static_cast<double>(size) *
                         static_cast<double>(members.size()) /
                         static_cast<double>(pool.size());
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    allotted += quota[c];
    rem.emplace_back(exact - std::floor(exact), c);
  }
  std::stable_sort(rem.begin(), rem.end(),
                   [](const auto &a, const auto &b) { return a.first > b.first; });
  for (std::size_t r = 0; allotted < size && r < rem.size(); ++r, ++allotted)
    ++quota[rem[r].second];
  std::vector<std::size_t> out;
  for (auto &[c, members] : by_class)
    out.insert(out.end(), members.begin(),
               members.begin() + static_cast<long>(quota[c]));
  std::sort(out.begin(), out.end());
  return out;
}

LearningCurve learning_curve(const LabeledMatrix &m, const ModelSpec &spec,
                             const std::vector<std::size_t> &sizes, int k_folds,
                             std::uint64_t seed) {
  m.validate();
  if (sizes.empty())
    throw UsageError("learning curve needs at least one size");
  for (std::size_t i = 0; i < sizes.size(); ++i)
    if (sizes[i] == 0 || (i > 0 && sizes[i] <= sizes[i - 1]))
      throw UsageError("learning-curve sizes must be positive and increasing");

  const auto folds = stratified_folds(m.labels, m.n_classes(), k_folds, seed);
  std::vector<std::vector<std::size_t>> train(static_cast<std::size_t>(k_folds)),
      test(static_cast<std::size_t>(k_folds));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int f = 0; f < k_folds; ++f)
      (folds[i] == f ? test : train)[static_cast<std::size_t>(f)].push_back(i);
  std::size_t smallest = m.size();
  for (const auto &t : train)
    smallest = std::min(smallest, t.size());
  if (sizes.back() > smallest)
    throw UsageError("largest learning-curve size " +
                     std::to_string(sizes.back()) + " exceeds the " +
                     std::to_string(smallest) + " training rows of a fold");

  LearningCurve lc;
  lc.train_sizes = sizes;
  lc.train_scores.assign(sizes.size(), 0.0);
  lc.cv_scores.assign(sizes.size(), 0.0);
  for (int f = 0; f < k_folds; ++f) {
    const auto fi = static_cast<std::size_t>(f);
    const auto test_m = m.subset(test[fi]);
    for (std::size_t s = 0; s < sizes.size(); ++s) {
      const auto unit = derive_seed(seed, fi * sizes.size() + s + 1);
      const auto idx = stratified_subsample(m.labels, train[fi], sizes[s], unit);
      const auto sub = m.subset(idx);
      ModelSpec unit_spec = spec;
      unit_spec.seed = derive_seed(spec.seed, unit);
      const auto clf = fit_classifier(sub, unit_spec);
      lc.train_scores[s] += accuracy(sub.labels, predict(clf, sub.rows));
      lc.cv_scores[s] += accuracy(test_m.labels, predict(clf, test_m.rows));
    }
  }
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    lc.train_scores[s] /= k_folds;
    lc.cv_scores[s] /= k_folds;
  }
  return lc;
}

std::string format_confusion_csv(const ConfusionMatrix &cm) {
  std::ostringstream out;
  out << "true\\predicted";
  for (const auto &n : cm.class_names)
    out << ',' << csv_field(n);
  out << '\n';
  for (std::size_t r = 0; r < cm.counts.size(); ++r) {
    out << csv_field(r < cm.class_names.size() ? cm.class_names[r]
                                               : std::to_string(r));
    for (long v : cm.counts[r])
      out << ',' << v;
    out << '\n';
  }
  return out.str();
}

std::string format_rates_csv(const RateReport &r,
                             const std::vector<std::string> &class_names) {
  std::ostringstream out;
  out << "class,tpr,fpr,tnr,fnr,precision,precision_undefined\n";
  auto f = [](double v) { return text::format_double(v); };
  for (std::size_t c = 0; c < r.per_class.size(); ++c) {
    const auto &p = r.per_class[c];
    out << csv_field(c < class_names.size() ? class_names[c] : std::to_string(c))
        << ',' << f(p.tpr) << ',' << f(p.fpr) << ',' << f(p.tnr) << ','
        << f(p.fnr) << ',' << f(p.precision) << ','
        << (p.precision_undefined ? 1 : 0) << '\n';
  }
  out << "macro," << f(r.tpr) << ',' << f(r.fpr) << ',' << f(r.tnr) << ','
      << f(r.fnr) << ',' << f(r.precision) << ','
      << (r.precision_warning ? 1 : 0) << '\n';
  return out.str();
}

std::string format_cv_csv(const CvResult &cv) {
  std::ostringstream out;
  out << "fold,accuracy\n";
  for (std::size_t f = 0; f < cv.fold_scores.size(); ++f)
    out << f + 1 << ',' << text::format_double(cv.fold_scores[f]) << '\n';
  out << "mean," << text::format_double(cv.mean) << '\n'
      << "sd," << text::format_double(cv.sd) << '\n';
  return out.str();
}

std::string format_grid_csv(const GridResult &g) {
  std::ostringstream out;
  out << "params,mean_accuracy,sd,best\n";
  for (std::size_t i = 0; i < g.table.size(); ++i)
    out << csv_field(describe_params(g.table[i].spec)) << ','
        << text::format_double(g.table[i].cv.mean) << ','
        << text::format_double(g.table[i].cv.sd) << ',' << (i == g.best ? 1 : 0)
        << '\n';
  return out.str();
}

std::string format_learning_curve_csv(const LearningCurve &lc) {
  std::ostringstream out;
  out << "train_size,train_score,cv_score\n";
  for (std::size_t i = 0; i < lc.train_sizes.size(); ++i)
    out << lc.train_sizes[i] << ',' << text::format_double(lc.train_scores[i])
        << ',' << text::format_double(lc.cv_scores[i]) << '\n';
  return out.str();
}

} // namespace mlgaze
