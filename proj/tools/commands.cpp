// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include "csv_table.hpp"
#include "svg.hpp"

#include "mlgaze/mlgaze.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace cli {

namespace fs = std::filesystem;

namespace {

int exit_code(mg_status s) {
  switch (s) {
  case MG_OK:
    return 0;
  case MG_ERR_DATA:
  case MG_ERR_IO:
    return 2;
  case MG_ERR_NUMERIC:
    return 3;
  case MG_ERR_USAGE:
  case MG_ERR_INTERNAL:
    break;
  }
  return 1;
}

void check(mg_status s) {
  if (s != MG_OK)
    throw Failure(exit_code(s), mg_last_error());
}

[[noreturn]] void usage(const std::string &what) { throw Failure(1, what); }

struct SessionFree {
  void operator()(mg_session *p) const { mg_session_free(p); }
};
struct ErrorsFree {
  void operator()(mg_errors *p) const { mg_errors_free(p); }
};
struct MatrixFree {
  void operator()(mg_matrix *p) const { mg_matrix_free(p); }
};
struct ModelFree {
  void operator()(mg_model *p) const { mg_model_free(p); }
};
struct StringFree {
  void operator()(char *p) const { mg_string_free(p); }
};

using Session = std::unique_ptr<mg_session, SessionFree>;
using Errors = std::unique_ptr<mg_errors, ErrorsFree>;
using Matrix = std::unique_ptr<mg_matrix, MatrixFree>;
using Model = std::unique_ptr<mg_model, ModelFree>;
using CString = std::unique_ptr<char, StringFree>;

struct Report {
  mg_report r{};
  ~Report() { mg_report_clear(&r); }
};

std::string take(char *s) {
  CString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

Session load_session(const std::string &path) {
  mg_session *s = nullptr;
  check(mg_session_load(path.c_str(), &s));
  return Session(s);
}

Errors load_errors(const std::string &path) {
  mg_errors *e = nullptr;
  check(mg_errors_load(path.c_str(), &e));
  return Errors(e);
}

Matrix load_matrix(const std::string &path) {
  mg_matrix *m = nullptr;
  check(mg_matrix_load(path.c_str(), &m));
  return Matrix(m);
}

void prepare(const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Failure(2, "cannot create output directory " + dir.string());
}

void write_text(const fs::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out)
    throw Failure(2, "cannot write " + path.string());
}

std::string stem(const std::string &path) { return fs::path(path).stem().string(); }

struct Meta {
  std::string participant, platform, condition;
};

Meta session_meta(const mg_session *s) {
  char *p = nullptr, *pl = nullptr, *c = nullptr;
  check(mg_session_meta(s, &p, &pl, &c));
  return {take(p), take(pl), take(c)};
}

/// Condition names compared the way the library parses them.
std::string condition_key(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (ch != '_' && ch != '-')
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

std::vector<const mg_errors *> raw(const std::vector<Errors> &v) {
  std::vector<const mg_errors *> out;
  for (const auto &e : v)
    out.push_back(e.get());
  return out;
}

Matrix assemble(const Global &g, const AssembleArgs &a) {
  if (a.inputs.empty())
    usage("no error series given");
  std::vector<Errors> errors;
  for (const auto &path : a.inputs)
    errors.push_back(load_errors(path));
  mg_assemble_params p;
  mg_assemble_params_init(&p);
  p.task = a.task.c_str();
  p.platform = a.platform.c_str();
  p.augment = a.no_augment ? 0 : 1;
  p.reduced = a.reduced ? 1 : 0;
  p.signed_mean = a.signed_mean ? 1 : 0;
  p.seed = g.seed;
  const auto ptrs = raw(errors);
  mg_matrix *m = nullptr;
  check(mg_matrix_assemble(ptrs.data(), ptrs.size(), &p, &m));
  return Matrix(m);
}

mg_model_spec model_spec(const Global &g, const ModelArgs &a) {
  mg_model_spec s;
  mg_model_spec_init(&s);
  s.family = a.family.c_str();
  s.k = a.k;
  s.C = a.C;
  s.gamma = a.gamma;
  if (!a.hidden.empty()) {
    if (a.hidden.size() > MG_MAX_LAYERS)
      usage("at most " + std::to_string(MG_MAX_LAYERS) + " hidden layers");
    s.n_hidden = static_cast<int>(a.hidden.size());
    std::copy(a.hidden.begin(), a.hidden.end(), s.hidden);
  }
  s.alpha = a.alpha;
  s.epochs = a.epochs;
  s.n_estimators = a.n_estimators;
  s.max_depth = a.max_depth;
  s.seed = g.seed;
  return s;
}

std::string describe_spec(const mg_model_spec &s) {
  std::ostringstream out;
  const std::string family = s.family;
  out << family;
  if (family == "knn") {
    out << " k=" << s.k;
  } else if (family == "svm") {
    out << " C=" << s.C << " gamma=" << s.gamma;
  } else if (family == "mlp") {
    out << " hidden=";
    for (int i = 0; i < s.n_hidden; ++i)
      out << (i ? "x" : "") << s.hidden[i];
    out << " alpha=" << s.alpha;
  } else {
    out << " n_estimators=" << s.n_estimators << " max_depth=" << s.max_depth;
  }
  return out.str();
}

// ------------------------------------------------------------------ plots

void plot_confusion(const fs::path &path, const std::string &csv,
                    const std::string &title) {
  const auto t = CsvTable::parse(csv);
  std::vector<std::vector<double>> values;
  std::vector<std::string> rows;
  for (const auto &r : t.rows) {
    rows.push_back(r.front());
    std::vector<double> v;
    for (std::size_t c = 1; c < r.size(); ++c)
      v.push_back(std::strtod(r[c].c_str(), nullptr));
    values.push_back(std::move(v));
  }
  const std::vector<std::string> cols(t.header.begin() + 1, t.header.end());
  write_text(path, svg::heatmap(title, values, rows, cols));
}

void plot_spatial(const fs::path &path, const std::string &csv,
                  const std::string &title) {
  const auto t = CsvTable::parse(csv);
  const auto id = t.column("aoi_id");
  const auto err = t.column("mean_abs_error");
  if (!id || !err)
    return;
  const auto ids = t.numbers(*id);
  const auto vals = t.numbers(*err);
  std::vector<std::vector<double>> grid(
      3, std::vector<double>(5, std::numeric_limits<double>::quiet_NaN()));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const int a = static_cast<int>(ids[i]) - 1;
    if (a >= 0 && a < 15)
      grid[static_cast<std::size_t>(a / 5)][static_cast<std::size_t>(a % 5)] =
          vals[i];
  }
  write_text(path, svg::heatmap(title, grid, {"top", "middle", "bottom"},
                                {"1", "2", "3", "4", "5"}));
}

} // namespace

// ------------------------------------------------------------------ synth

void run_synth(const Global &g, const SynthArgs &a) {
  if (a.participants < 1)
    usage("--participants must be >= 1");
  std::vector<std::string> conditions = a.conditions;
  if (conditions.empty()) {
    conditions = {"UD50", "UD60", "UD70", "UD80"};
    if (condition_key(a.platform) == "tablet")
      conditions.insert(conditions.end(),
                        {"PlatRoll20", "PlatPitch20", "PlatYaw20"});
    else
      conditions.insert(conditions.end(),
                        {"HeadRoll20", "HeadPitch20", "HeadYaw20"});
  }
  prepare(g.out);
  std::size_t written = 0;
  for (int p = 0; p < a.participants; ++p) {
    char id[16];
    std::snprintf(id, sizeof id, "P%02d", p + 1);
    for (std::size_t c = 0; c < conditions.size(); ++c) {
      mg_synth_params sp;
      mg_synth_params_init(&sp);
      sp.platform = a.platform.c_str();
      sp.condition = conditions[c].c_str();
      sp.participant = id;
      sp.mean_error = a.mean;
      sp.mad = a.mad;
      sp.mode = a.mode.empty() ? nullptr : a.mode.c_str();
      sp.user_distance_mm = a.distance;
      sp.samples_per_aoi = a.samples_per_aoi;
      sp.seed = mg_derive_seed(g.seed, static_cast<std::uint64_t>(p) * 64 + c);
      mg_session *raw_session = nullptr;
      check(mg_session_synth(&sp, &raw_session));
      const Session s(raw_session);
      const auto meta = session_meta(s.get());
      const auto path = g.out / (meta.platform + "_" + meta.participant + "_" +
                                 meta.condition + ".csv");
      check(mg_session_save(s.get(), path.string().c_str()));
      ++written;
    }
  }
  std::cout << "wrote " << written << " sessions to " << g.out.string() << '\n';
}

// ------------------------------------------------------------------ clean

void run_clean(const Global &g, const CleanArgs &a) {
  if (a.inputs.empty())
    usage("no input sessions given");
  mg_clean_params cp;
  mg_clean_params_init(&cp);
  cp.method = a.method.c_str();
  cp.kernel = a.kernel;
  cp.mad_k = a.mad_k;
  prepare(g.out);
  for (const auto &path : a.inputs) {
    const auto s = load_session(path);
    mg_errors *e = nullptr;
    check(mg_errors_compute(s.get(), &cp, &e));
    const Errors errors(e);
    const auto target = g.out / (stem(path) + "_errors.csv");
    check(mg_errors_save(errors.get(), target.string().c_str()));
    std::cout << target.string() << ": " << mg_errors_size(errors.get())
              << " samples\n";
  }
}

// ------------------------------------------------------------------ stats

void run_stats(const Global &g, const StatsArgs &a) {
  if (a.inputs.empty())
    usage("no error series given");
  if (a.points < 2)
    usage("--points must be >= 2");
  prepare(g.out);
  static constexpr std::array<std::pair<mg_channel, const char *>, 3> channels{
      {{MG_FRONTAL, "frontal"}, {MG_YAW, "yaw"}, {MG_PITCH, "pitch"}}};

  std::vector<Errors> series;
  std::vector<std::string> names;
  std::ostringstream stats;
  stats << "series,channel,mean,sd,mad,iqr,ci95_low,ci95_high,n\n";
  std::vector<svg::Series> curves;
  for (const auto &path : a.inputs) {
    auto e = load_errors(path);
    const auto name = stem(path);
    for (const auto &[ch, label] : channels) {
      mg_stats st{};
      check(mg_errors_describe(e.get(), ch, &st));
      char line[512];
      std::snprintf(line, sizeof line, "%s,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%zu\n",
                    name.c_str(), label, st.mean, st.sd, st.mad, st.iqr,
                    st.ci95_low, st.ci95_high, st.n);
      stats << line;
    }
    char *kde = nullptr;
    check(mg_errors_kde_csv(e.get(), MG_FRONTAL, a.bandwidth,
                            static_cast<std::size_t>(a.points), &kde));
    const auto kde_csv = take(kde);
    write_text(g.out / ("kde_" + name + ".csv"), kde_csv);
    if (g.plot) {
      const auto t = CsvTable::parse(kde_csv);
      curves.push_back({name, t.numbers(0), t.numbers(1)});
    }
    char *spatial = nullptr;
    check(mg_errors_spatial_csv(e.get(), nullptr, &spatial));
    const auto spatial_csv = take(spatial);
    write_text(g.out / ("spatial_" + name + ".csv"), spatial_csv);
    if (g.plot)
      plot_spatial(g.out / ("spatial_" + name + ".svg"), spatial_csv,
                   "Mean |error| per AOI: " + name);
    series.push_back(std::move(e));
    names.push_back(name);
  }
  write_text(g.out / "stats.csv", stats.str());

  if (series.size() >= 2) {
    const auto ptrs = raw(series);
    std::vector<const char *> cnames;
    for (const auto &n : names)
      cnames.push_back(n.c_str());
    char *corr = nullptr;
    check(mg_correlation_csv(ptrs.data(), cnames.data(), ptrs.size(), MG_FRONTAL,
                             &corr));
    const auto corr_csv = take(corr);
    write_text(g.out / "correlation.csv", corr_csv);
    if (g.plot) {
      const auto t = CsvTable::parse(corr_csv);
      std::vector<std::vector<double>> values;
      for (const auto &r : t.rows) {
        std::vector<double> v;
        for (std::size_t c = 1; c < r.size(); ++c)
          v.push_back(std::strtod(r[c].c_str(), nullptr));
        values.push_back(std::move(v));
      }
      write_text(g.out / "correlation.svg",
                 svg::heatmap("Pearson r of per-AOI error", values, names, names));
    }
  }
  if (g.plot)
    write_text(g.out / "kde.svg",
               svg::line_plot({"Frontal error density", "error (deg)", "density"},
                              curves));
  std::cout << "described " << series.size() << " series\n";
}

// ------------------------------------------------------------------ augment

void run_augment(const Global &g, const AugmentArgs &a) {
  if (a.inputs.empty())
    usage("no error series given");
  mg_augment_params p;
  mg_augment_params_init(&p);
  if (!std::isnan(a.sigma))
    p.sigma = a.sigma;
  if (!std::isnan(a.pink_sigma))
    p.pink_sigma = a.pink_sigma;
  if (!std::isnan(a.pink_alpha))
    p.pink_alpha = a.pink_alpha;
  if (a.window > 0)
    p.window = a.window;
  if (a.shift >= 0)
    p.shift = a.shift;
  p.highpass_hz = a.highpass_hz;
  prepare(g.out);
  for (std::size_t i = 0; i < a.inputs.size(); ++i) {
    const auto e = load_errors(a.inputs[i]);
    std::array<mg_errors *, MG_VARIANTS> out{};
    check(mg_errors_augment(e.get(), mg_derive_seed(g.seed, i), &p, out.data()));
    std::vector<Errors> variants;
    for (auto *v : out)
      variants.emplace_back(v);
    for (const auto &v : variants) {
      const auto target =
          g.out / (stem(a.inputs[i]) + "_" + mg_errors_tag(v.get()) + ".csv");
      check(mg_errors_save(v.get(), target.string().c_str()));
    }
  }
  std::cout << "wrote " << a.inputs.size() * MG_VARIANTS << " variants\n";
}

// ------------------------------------------------------------------ features

void run_features(const Global &g, const FeaturesArgs &a) {
  const auto m = assemble(g, a.assemble);
  prepare(g.out);
  std::size_t rows = 0, cols = 0, classes = 0;
  check(mg_matrix_shape(m.get(), &rows, &cols, &classes));
  check(mg_matrix_save(m.get(), (g.out / "features.csv").string().c_str()));
  std::cout << "features: " << rows << " rows, " << cols << " columns, "
            << classes << " classes\n";

  if (a.test_frac > 0.0) {
    mg_matrix *tr = nullptr, *te = nullptr;
    check(mg_matrix_split(m.get(), a.test_frac, a.by_participant ? 1 : 0, g.seed,
                          &tr, &te));
    const Matrix train(tr), test(te);
    check(mg_matrix_save(train.get(), (g.out / "train.csv").string().c_str()));
    check(mg_matrix_save(test.get(), (g.out / "test.csv").string().c_str()));
  }
  if (a.importance) {
    char *csv = nullptr;
    check(mg_importance_csv(m.get(), a.n_estimators, a.max_depth, g.seed, &csv));
    write_text(g.out / "importance.csv", take(csv));
  }
}

// ------------------------------------------------------------------ tsne

void run_tsne(const Global &g, const TsneArgs &a) {
  const auto m = load_matrix(a.input);
  char *csv = nullptr;
  double kl[2] = {0.0, 0.0};
  check(mg_tsne_csv(m.get(), a.perplexity, a.dims, a.iterations, g.seed, &csv,
                    kl));
  const auto text = take(csv);
  prepare(g.out);
  write_text(g.out / "tsne.csv", text);
  char summary[128];
  std::snprintf(summary, sizeof summary,
                "perplexity,kl_initial,kl_final\n%.17g,%.17g,%.17g\n",
                a.perplexity, kl[0], kl[1]);
  write_text(g.out / "tsne_summary.csv", summary);
  std::cout << "KL divergence " << kl[0] << " -> " << kl[1] << '\n';
  if (g.plot) {
    const auto t = CsvTable::parse(text);
    const auto label = t.column("label");
    write_text(g.out / "tsne.svg",
               svg::scatter({"t-SNE embedding", "dim 1", "dim 2"}, t.numbers(0),
                            t.numbers(1),
                            label ? t.strings(*label)
                                  : std::vector<std::string>{}));
  }
}

// ------------------------------------------------------------------ train

void run_train(const Global &g, const TrainArgs &a) {
  Matrix m;
  if (!a.assemble.inputs.empty()) {
    m = assemble(g, a.assemble);
  } else {
    const auto path =
        a.features.empty() ? (g.out / "features.csv").string() : a.features;
    m = load_matrix(path);
  }
  prepare(g.out);
  auto spec = model_spec(g, a.model);

  if (a.grid) {
    char *grid = nullptr;
    mg_model_spec best{};
    check(mg_grid_search(m.get(), &spec, a.cv, g.seed, &grid, &best));
    write_text(g.out / "grid.csv", take(grid));
    spec = best;
    std::cout << "best: " << describe_spec(spec) << '\n';
  }

  double mean = 0.0;
  char *cv = nullptr;
  Report rep;
  check(mg_cross_validate(m.get(), &spec, a.cv, g.seed, &mean, &cv, &rep.r));
  write_text(g.out / "cv.csv", take(cv));
  write_text(g.out / "confusion.csv", rep.r.confusion_csv);
  write_text(g.out / "rates.csv", rep.r.rates_csv);
  if (g.plot)
    plot_confusion(g.out / "confusion.svg", rep.r.confusion_csv,
                   "Cross-validated confusion: " + describe_spec(spec));

  if (!a.learning_curve.empty()) {
    char *lc = nullptr;
    check(mg_learning_curve_csv(m.get(), &spec, a.learning_curve.data(),
                                a.learning_curve.size(), a.cv, g.seed, &lc));
    const auto text = take(lc);
    write_text(g.out / "learning_curve.csv", text);
    if (g.plot) {
      const auto t = CsvTable::parse(text);
      const auto x = t.numbers(0);
      write_text(g.out / "learning_curve.svg",
                 svg::line_plot({"Learning curve", "training samples", "accuracy"},
                                {{"train", x, t.numbers(1)},
                                 {"cross-validation", x, t.numbers(2)}}));
    }
  }

  mg_model *raw_model = nullptr;
  check(mg_model_train(m.get(), &spec, &raw_model));
  const Model model(raw_model);
  const auto target =
      a.model_out.empty() ? (g.out / "model.txt").string() : a.model_out;
  check(mg_model_save(model.get(), target.c_str()));

  std::printf("%s: %d-fold CV accuracy %.4f\n", describe_spec(spec).c_str(),
              a.cv, mean);
}

// ------------------------------------------------------------------ evaluate

void run_evaluate(const Global &g, const EvaluateArgs &a) {
  mg_model *raw_model = nullptr;
  check(mg_model_load(a.model.c_str(), &raw_model));
  const Model model(raw_model);
  const auto m = load_matrix(a.input);
  Report rep;
  check(mg_model_evaluate(model.get(), m.get(), &rep.r));
  prepare(g.out);
  write_text(g.out / "evaluation_confusion.csv", rep.r.confusion_csv);
  write_text(g.out / "evaluation_rates.csv", rep.r.rates_csv);
  if (g.plot)
    plot_confusion(g.out / "evaluation_confusion.svg", rep.r.confusion_csv,
                   "Held-out confusion");
  std::printf("accuracy %.4f (tpr %.4f, fpr %.4f, precision %.4f)\n",
              rep.r.accuracy, rep.r.tpr, rep.r.fpr, rep.r.precision);
}

// ------------------------------------------------------------------ regress

void run_regress(const Global &g, const RegressArgs &a) {
  if (a.inputs.empty())
    usage("no input sessions given");
  std::vector<Session> sessions;
  std::vector<std::string> keys;
  std::vector<std::string> canonical;
  for (const auto &path : a.inputs) {
    auto s = load_session(path);
    const auto meta = session_meta(s.get());
    keys.push_back(condition_key(meta.condition));
    canonical.push_back(meta.condition);
    sessions.push_back(std::move(s));
  }

  // One fit per requested condition; without a filter, one per condition seen.
  std::vector<std::string> wanted;
  if (a.conditions.empty()) {
    for (const auto &c : canonical)
      if (std::find(wanted.begin(), wanted.end(), c) == wanted.end())
        wanted.push_back(c);
  } else {
    wanted = a.conditions;
  }

  mg_regress_params p;
  mg_regress_params_init(&p);
  p.penalty = a.penalty.c_str();
  p.strength = a.strength;
  p.mix = a.mix;
  p.degree = a.degree;
  p.test_frac = a.test_frac;
  p.seed = g.seed;
  p.clean.method = a.clean.c_str();
  p.clean.kernel = a.kernel;

  prepare(g.out);
  std::string coefficients;
  std::ostringstream summary;
  summary << "condition,n_train,n_test,rmse_deg,baseline_deg,rmse_std,"
             "baseline_std\n";
  std::ostringstream traces;
  traces << "condition,index,actual,predicted\n";
  std::vector<svg::Series> plot_series;
  for (const auto &cond : wanted) {
    const auto key = condition_key(cond);
    std::vector<const mg_session *> picked;
    for (std::size_t i = 0; i < sessions.size(); ++i)
      if (keys[i] == key)
        picked.push_back(sessions[i].get());
    if (picked.empty())
      throw Failure(2, "no session with condition " + cond);

    mg_regress_result r{};
    const auto status =
        mg_regress(picked.data(), picked.size(), cond.c_str(), &p, &r);
    check(status);
    const std::string coef = r.coef_csv, trace = r.trace_csv, model = r.model;
    const auto rmse = r.rmse_deg, base = r.baseline_deg;
    char line[512];
    std::snprintf(line, sizeof line, "%s,%zu,%zu,%.17g,%.17g,%.17g,%.17g\n",
                  cond.c_str(), r.n_train, r.n_test, r.rmse_deg, r.baseline_deg,
                  r.rmse_std, r.baseline_std);
    mg_regress_result_clear(&r);

    summary << line;
    coefficients += coefficients.empty() ? coef : coef.substr(coef.find('\n') + 1);
    const auto t = CsvTable::parse(trace);
    for (const auto &row : t.rows) {
      traces << cond;
      for (const auto &cell : row)
        traces << ',' << cell;
      traces << '\n';
    }
    write_text(g.out / ("linear_model_" + cond + ".txt"), model);
    if (g.plot) {
      plot_series.clear();
      const auto x = t.numbers(0);
      plot_series.push_back({"actual", x, t.numbers(1)});
      plot_series.push_back({"predicted", x, t.numbers(2)});
      write_text(g.out / ("regression_trace_" + cond + ".svg"),
                 svg::line_plot({"Frontal error: " + cond, "held-out sample",
                                 "error (deg)"},
                                plot_series));
    }
    std::printf("%s: RMSE %.4f deg (baseline %.4f deg)\n", cond.c_str(), rmse,
                base);
  }
  write_text(g.out / "coefficients.csv", coefficients);
  write_text(g.out / "regression_summary.csv", summary.str());
  write_text(g.out / "regression_trace.csv", traces.str());
}

// ------------------------------------------------------------------ report

namespace {

void markdown_table(std::ostream &out, const CsvTable &t) {
  out << '|';
  for (const auto &h : t.header)
    out << ' ' << h << " |";
  out << "\n|";
  for (std::size_t i = 0; i < t.header.size(); ++i)
    out << "---|";
  out << '\n';
  for (const auto &r : t.rows) {
    out << '|';
    for (const auto &c : r)
      out << ' ' << c << " |";
    out << '\n';
  }
  out << '\n';
}

} // namespace

void run_report(const Global &g, const ReportArgs &a) {
  const fs::path dir = a.dir.empty() ? g.out : fs::path(a.dir);
  if (!fs::is_directory(dir))
    throw Failure(2, "cannot open directory " + dir.string());

  static const std::array<std::pair<const char *, const char *>, 12> sections{{
      {"stats.csv", "Descriptive statistics"},
      {"correlation.csv", "Per-AOI error correlation"},
      {"importance.csv", "Feature importance"},
      {"tsne_summary.csv", "t-SNE"},
      {"grid.csv", "Grid search"},
      {"cv.csv", "Cross-validation"},
      {"confusion.csv", "Confusion matrix"},
      {"rates.csv", "Per-class rates"},
      {"learning_curve.csv", "Learning curve"},
      {"evaluation_rates.csv", "Held-out evaluation"},
      {"coefficients.csv", "Regression coefficients"},
      {"regression_summary.csv", "Regression error"},
  }};

  std::ostringstream out;
  out << "# Gaze error analysis report\n\n";
  std::size_t found = 0;
  for (const auto &[file, title] : sections) {
    const auto path = dir / file;
    if (!fs::exists(path))
      continue;
    out << "## " << title << "\n\n`" << file << "`\n\n";
    try {
      markdown_table(out, CsvTable::read(path));
    } catch (const std::runtime_error &e) {
      throw Failure(2, e.what());
    }
    ++found;
  }
  std::vector<std::string> figures;
  for (const auto &entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".svg")
      figures.push_back(entry.path().filename().string());
  std::sort(figures.begin(), figures.end());
  if (!figures.empty()) {
    out << "## Figures\n\n";
    for (const auto &f : figures)
      out << "![" << f << "](" << f << ")\n";
    out << '\n';
  }
  if (found == 0 && figures.empty())
    throw Failure(2, "no stage outputs found in " + dir.string());
  write_text(dir / "report.md", out.str());
  std::cout << "report: " << found << " tables, " << figures.size()
            << " figures\n";
}

} // namespace cli
