// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/features.hpp"

#include "mlgaze/error.hpp"
#include "mlgaze/rng.hpp"
#include "mlgaze/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace mlgaze {

namespace {

std::vector<std::string> make_feature_names() {
  std::vector<std::string> names;
  for (int k = 1; k <= kAoiCount; ++k)
    names.push_back((k < 10 ? "aoi_0" : "aoi_") + std::to_string(k));
  for (const char *s : {"mean", "sd", "iqr", "ci_lo", "ci_hi"})
    names.emplace_back(s);
  return names;
}

/// Sessions recorded at 60 cm in neutral pose stand for both UD60 and Neutral.
bool is_neutral_alias(Condition c) {
  return c == Condition::UD60 || c == Condition::Neutral;
}

std::optional<std::size_t> class_index(const std::vector<Condition> &classes,
                                       Condition c) {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] == c)
      return i;
    if (is_neutral_alias(classes[i]) && is_neutral_alias(c))
      return i;
  }
  return std::nullopt;
}

} // namespace

const std::vector<std::string> &feature_column_names() {
  static const auto names = make_feature_names();
  return names;
}

const std::vector<std::string> &reduced_column_names() {
  static const std::vector<std::string> names(feature_column_names().end() - 5,
                                              feature_column_names().end());
  return names;
}

std::vector<double> Standardization::apply(const std::vector<double> &row) const {
  if (row.size() != mean.size())
    throw UsageError("row width does not match standardization");
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j)
    out[j] = (row[j] - mean[j]) / sd[j];
  return out;
}

std::vector<double>
Standardization::invert(const std::vector<double> &row) const {
  if (row.size() != mean.size())
    throw UsageError("row width does not match standardization");
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j)
    out[j] = row[j] * sd[j] + mean[j];
  return out;
}

Rows Standardization::apply(const Rows &rows) const {
  Rows out;
  out.reserve(rows.size());
  for (const auto &r : rows)
    out.push_back(apply(r));
  return out;
}

Rows Standardization::invert(const Rows &rows) const {
  Rows out;
  out.reserve(rows.size());
  for (const auto &r : rows)
    out.push_back(invert(r));
  return out;
}

void LabeledMatrix::validate() const {
  const auto n = rows.size();
  if (labels.size() != n)
    throw DataError("labels and rows differ in length");
  if (!categories.empty() && categories.size() != n)
    throw DataError("categories and rows differ in length");
  if (!groups.empty() && groups.size() != n)
    throw DataError("groups and rows differ in length");
  for (const auto &r : rows)
    if (r.size() != rows.front().size())
      throw DataError("ragged feature rows");
  if (!column_names.empty() && n > 0 && column_names.size() != rows[0].size())
    throw DataError("column names do not match row width");
  for (int l : labels)
    if (l < 0 || static_cast<std::size_t>(l) >= class_names.size())
      throw DataError("label out of range");
}

LabeledMatrix LabeledMatrix::subset(const std::vector<std::size_t> &idx) const {
  LabeledMatrix out;
  out.class_names = class_names;
  out.column_names = column_names;
  out.standardization = standardization;
  out.rows.reserve(idx.size());
  out.labels.reserve(idx.size());
  for (auto i : idx) {
    out.rows.push_back(rows.at(i));
    out.labels.push_back(labels.at(i));
    if (!categories.empty())
      out.categories.push_back(categories[i]);
    if (!groups.empty())
      out.groups.push_back(groups[i]);
  }
  return out;
}

FeatureVector build_feature(const ErrorSeries &errors, ErrorChannel category,
                            bool magnitude) {
  const auto per_aoi = per_aoi_mean(errors, category, magnitude);
  FeatureVector f{};
  for (std::size_t k = 0; k < per_aoi.size(); ++k) {
    if (!per_aoi[k])
      throw DataError("AOI " + std::to_string(k + 1) +
                      " has no samples; cannot build its feature");
    f[k] = *per_aoi[k];
  }
  const auto stats = describe(errors.channel(category));
  f[15] = stats.mean;
  f[16] = stats.sd;
  f[17] = stats.iqr;
  f[18] = stats.ci95_low;
  f[19] = stats.ci95_high;
  return f;
}

ReducedFeatureVector reduce(const FeatureVector &f) {
  ReducedFeatureVector r{};
  std::copy(f.end() - 5, f.end(), r.begin());
  return r;
}

std::string_view to_string(Task t) {
  switch (t) {
  case Task::user_distance:
    return "user_distance";
  case Task::head_pose:
    return "head_pose";
  case Task::platform_pose:
    return "platform_pose";
  case Task::mixed:
    return "mixed";
  }
  return "?";
}

std::optional<Task> parse_task(std::string_view t) {
  const auto s = text::lower(text::trim(t));
  for (auto task : {Task::user_distance, Task::head_pose, Task::platform_pose,
                    Task::mixed})
    if (s == to_string(task))
      return task;
  return std::nullopt;
}

std::vector<Condition> task_classes(Task task, Platform platform) {
  switch (task) {
  case Task::user_distance:
    return {Condition::UD50, Condition::UD60, Condition::UD70, Condition::UD80};
  case Task::head_pose:
    return {Condition::Neutral, Condition::HeadRoll20, Condition::HeadPitch20,
            Condition::HeadYaw20};
  case Task::platform_pose:
    return {Condition::Neutral, Condition::PlatRoll20, Condition::PlatPitch20,
            Condition::PlatYaw20};
  case Task::mixed:
    if (platform == Platform::desktop)
      return {Condition::UD50,       Condition::UD60,        Condition::UD70,
              Condition::UD80,       Condition::HeadRoll20,  Condition::HeadPitch20,
              Condition::HeadYaw20};
    return {Condition::UD50,       Condition::UD60,        Condition::UD70,
            Condition::UD80,       Condition::PlatRoll20,  Condition::PlatPitch20,
            Condition::PlatYaw20};
  }
  return {};
}

LabeledMatrix assemble_dataset(const std::vector<LabeledErrors> &sessions,
                               const AssembleOptions &opts) {
  if (opts.categories.empty())
    throw UsageError("at least one error category is required");
  const auto classes = task_classes(opts.task, opts.platform);

  LabeledMatrix m;
  for (auto c : classes)
    m.class_names.emplace_back(to_string(c));
  m.column_names = opts.feature_set == FeatureSet::full
                       ? feature_column_names()
                       : reduced_column_names();

  std::vector<std::size_t> class_sessions(classes.size(), 0);
  std::set<std::string> neutral_seen;

  for (std::size_t s = 0; s < sessions.size(); ++s) {
    const auto &sess = sessions[s];
    if (opts.task == Task::platform_pose &&
        sess.meta.platform != Platform::tablet)
      continue;
    if (opts.task == Task::head_pose && sess.meta.platform != Platform::desktop)
      continue;
    if (opts.task == Task::mixed && sess.meta.platform != opts.platform)
      continue;
    const auto cls = class_index(classes, sess.meta.condition);
    if (!cls)
      continue;
    if (is_neutral_alias(sess.meta.condition)) {
      const auto key = std::string(to_string(sess.meta.platform)) + "/" +
                       sess.meta.participant_id;
      if (!neutral_seen.insert(key).second)
        throw DataError("participant " + sess.meta.participant_id +
                        " contributes neutral/UD60 data twice");
    }
    ++class_sessions[*cls];

    std::vector<ErrorSeries> variants;
    if (opts.augment) {
      auto set = augment_sample(sess.errors, derive_seed(opts.seed, s),
                                opts.augment_params);
      for (auto &v : set.variants)
        variants.push_back(std::move(v.errors));
    } else {
      variants.push_back(sess.errors);
    }

    for (auto cat : opts.categories) {
      for (const auto &v : variants) {
        const auto f = build_feature(v, cat, opts.magnitude);
        if (opts.feature_set == FeatureSet::full)
          m.rows.emplace_back(f.begin(), f.end());
        else {
          const auto r = reduce(f);
          m.rows.emplace_back(r.begin(), r.end());
        }
        m.labels.push_back(static_cast<int>(*cls));
        m.categories.emplace_back(to_string(cat));
        m.groups.push_back(sess.meta.participant_id);
      }
    }
  }

  for (std::size_t c = 0; c < classes.size(); ++c)
    if (class_sessions[c] == 0)
      throw DataError("class " + m.class_names[c] + " has no sessions");
  return m;
}

Standardization fit_standardization(const LabeledMatrix &m) {
  if (m.rows.empty())
    throw UsageError("cannot standardize an empty matrix");
  const auto d = m.rows.front().size();
  const auto n = static_cast<double>(m.rows.size());
  Standardization p;
  p.mean.assign(d, 0.0);
  p.sd.assign(d, 0.0);
  for (const auto &r : m.rows)
    for (std::size_t j = 0; j < d; ++j)
      p.mean[j] += r[j];
  for (auto &v : p.mean)
    v /= n;
  for (const auto &r : m.rows)
    for (std::size_t j = 0; j < d; ++j)
      p.sd[j] += (r[j] - p.mean[j]) * (r[j] - p.mean[j]);
  for (std::size_t j = 0; j < d; ++j) {
    p.sd[j] = std::sqrt(p.sd[j] / n);
    if (!(p.sd[j] > 0.0)) {
      const auto name = j < m.column_names.size() ? m.column_names[j]
                                                  : std::to_string(j);
      throw UsageError("column '" + name + "' has zero variance");
    }
  }
  return p;
}

LabeledMatrix apply_standardization(const LabeledMatrix &m,
                                    const Standardization &params) {
  LabeledMatrix out = m;
  out.rows = params.apply(m.rows);
  out.standardization = params;
  return out;
}

LabeledMatrix standardize(const LabeledMatrix &m) {
  return apply_standardization(m, fit_standardization(m));
}

Split shuffle_split(const LabeledMatrix &m, double test_frac,
                    std::uint64_t seed) {
  if (!(test_frac > 0.0 && test_frac < 1.0))
    throw UsageError("test fraction must lie in (0, 1)");
  m.validate();
  const auto k = m.n_classes();
  std::vector<std::vector<std::size_t>> by_class(k);
  for (std::size_t i = 0; i < m.size(); ++i)
    by_class[static_cast<std::size_t>(m.labels[i])].push_back(i);

  Rng rng(seed);
  std::vector<std::size_t> quota(k, 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t allotted = 0;
  for (std::size_t c = 0; c < k; ++c) {
    if (by_class[c].empty())
      continue;
    if (by_class[c].size() < 2)
      throw DataError("class " + m.class_names[c] +
                      " has fewer than 2 samples; cannot split");
    std::shuffle(by_class[c].begin(), by_class[c].end(), rng);
    const double exact = test_frac * static_cast<double>(by_class[c].size());
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    allotted += quota[c];
    remainders.emplace_back(exact - std::floor(exact), c);
  }
  const auto target = static_cast<std::size_t>(
      std::llround(test_frac * static_cast<double>(m.size())));
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto &a, const auto &b) { return a.first > b.first; });
  for (std::size_t r = 0; allotted < target && r < remainders.size(); ++r) {
    ++quota[remainders[r].second];
    ++allotted;
  }

  Split out;
  for (std::size_t c = 0; c < k; ++c) {
    if (by_class[c].empty())
      continue;
    // Keep at least one row of every class on each side.
    quota[c] = std::clamp<std::size_t>(quota[c], 1, by_class[c].size() - 1);
    for (std::size_t i = 0; i < by_class[c].size(); ++i)
      (i < quota[c] ? out.test_indices : out.train_indices)
          .push_back(by_class[c][i]);
  }
  std::sort(out.train_indices.begin(), out.train_indices.end());
  std::sort(out.test_indices.begin(), out.test_indices.end());
  out.train = m.subset(out.train_indices);
  out.test = m.subset(out.test_indices);
  return out;
}

Split participant_split(const LabeledMatrix &m, double test_frac,
                        std::uint64_t seed) {
  if (!(test_frac > 0.0 && test_frac < 1.0))
    throw UsageError("test fraction must lie in (0, 1)");
  if (m.groups.size() != m.size())
    throw DataError("participant split needs a participant id per row");
  std::vector<std::string> ids(m.groups.begin(), m.groups.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() < 2)
    throw DataError("participant split needs at least two participants");
  Rng rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  auto n_test = static_cast<std::size_t>(
      std::llround(test_frac * static_cast<double>(ids.size())));
  n_test = std::clamp<std::size_t>(n_test, 1, ids.size() - 1);
  const std::set<std::string> test_ids(ids.begin(), ids.begin() + static_cast<long>(n_test));

  Split out;
  for (std::size_t i = 0; i < m.size(); ++i)
    (test_ids.count(m.groups[i]) ? out.test_indices : out.train_indices)
        .push_back(i);
  out.train = m.subset(out.train_indices);
  out.test = m.subset(out.test_indices);
  return out;
}

std::string format_feature_matrix(const LabeledMatrix &m) {
  m.validate();
  std::ostringstream out;
  for (std::size_t j = 0; j < m.column_names.size(); ++j)
    out << m.column_names[j] << ',';
  out << "label,category,participant\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (double v : m.rows[i])
      out << text::format_double(v) << ',';
    out << m.class_names[static_cast<std::size_t>(m.labels[i])] << ','
        << (m.categories.empty() ? "" : m.categories[i]) << ','
        << (m.groups.empty() ? "" : m.groups[i]) << '\n';
  }
  return out.str();
}

LabeledMatrix parse_feature_matrix(std::string_view content) {
  const auto all = text::lines(content);
  if (all.empty())
    throw DataError("empty feature file");
  const auto header = text::split(all.front(), ',');
  std::size_t label_col = header.size();
  for (std::size_t j = 0; j < header.size(); ++j)
    if (text::trim(header[j]) == "label")
      label_col = j;
  if (label_col == header.size() || label_col == 0)
    throw DataError("feature file has no label column");

  LabeledMatrix m;
  for (std::size_t j = 0; j < label_col; ++j)
    m.column_names.emplace_back(text::trim(header[j]));
  const bool has_category =
      label_col + 1 < header.size() && text::trim(header[label_col + 1]) == "category";
  const bool has_participant = label_col + 2 < header.size() &&
                               text::trim(header[label_col + 2]) == "participant";

  // Class order: the canonical condition order when every label is a known
  // condition, otherwise first appearance.
  std::vector<std::string> seen;
  for (std::size_t i = 1; i < all.size(); ++i) {
    const auto f = text::split(all[i], ',');
    if (f.size() != header.size())
      throw DataError("row " + std::to_string(i) + ": expected " +
                      std::to_string(header.size()) + " fields");
    std::string label(text::trim(f[label_col]));
    if (std::find(seen.begin(), seen.end(), label) == seen.end())
      seen.push_back(label);
  }
  const bool all_conditions = std::all_of(seen.begin(), seen.end(), [](auto &s) {
    return parse_condition(s).has_value();
  });
  if (all_conditions)
    std::sort(seen.begin(), seen.end(), [](const auto &a, const auto &b) {
      return *parse_condition(a) < *parse_condition(b);
    });
  m.class_names = seen;

  for (std::size_t i = 1; i < all.size(); ++i) {
    const auto f = text::split(all[i], ',');
    std::vector<double> row;
    for (std::size_t j = 0; j < label_col; ++j) {
      const auto v = text::parse_double(f[j]);
      if (!v || !std::isfinite(*v))
        throw DataError("row " + std::to_string(i) + ": bad value in column " +
                        m.column_names[j]);
      row.push_back(*v);
    }
    m.rows.push_back(std::move(row));
    const std::string label(text::trim(f[label_col]));
    m.labels.push_back(static_cast<int>(
        std::find(seen.begin(), seen.end(), label) - seen.begin()));
    if (has_category)
      m.categories.emplace_back(text::trim(f[label_col + 1]));
    if (has_participant)
      m.groups.emplace_back(text::trim(f[label_col + 2]));
  }
  m.validate();
  return m;
}

void save_feature_matrix(const LabeledMatrix &m,
                         const std::filesystem::path &path) {
  text::write_file(path, format_feature_matrix(m));
}

LabeledMatrix load_feature_matrix(const std::filesystem::path &path) {
  return parse_feature_matrix(text::read_file(path));
}

} // namespace mlgaze
