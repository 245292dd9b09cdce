// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/mlgaze.h"

#include "mlgaze/analysis.hpp"
#include "mlgaze/augment.hpp"
#include "mlgaze/error.hpp"
#include "mlgaze/evaluate.hpp"
#include "mlgaze/features.hpp"
#include "mlgaze/learn.hpp"
#include "mlgaze/rng.hpp"
#include "mlgaze/series_io.hpp"
#include "mlgaze/synth.hpp"
#include "mlgaze/text.hpp"
#include "mlgaze/tsne.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <sstream>
#include <string>

struct mg_session {
  mlgaze::GazeSession value;
};
struct mg_errors {
  mlgaze::ErrorRecording value;
};
struct mg_matrix {
  mlgaze::LabeledMatrix value;
};
struct mg_model {
  mlgaze::Classifier value;
};

namespace {

using namespace mlgaze;

thread_local std::string g_last_error;

mg_status fail(mg_status status, const std::string &message) {
  g_last_error = message;
  return status;
}

template <class F> mg_status guarded(F &&f) {
  try {
    g_last_error.clear();
    f();
    return MG_OK;
  } catch (const UsageError &e) {
    return fail(MG_ERR_USAGE, e.what());
  } catch (const NumericError &e) {
    return fail(MG_ERR_NUMERIC, e.what());
  } catch (const DataError &e) {
    const std::string what = e.what();
    // File access failures surface as DataError from the readers.
    const bool io = what.rfind("cannot open", 0) == 0 ||
                    what.rfind("cannot write", 0) == 0;
    return fail(io ? MG_ERR_IO : MG_ERR_DATA, what);
  } catch (const std::bad_alloc &) {
    return fail(MG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(MG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MG_ERR_INTERNAL, "unknown error");
  }
}

void require(const void *p, const char *name) {
  if (!p)
    throw UsageError(std::string(name) + " must not be NULL");
}

char *dup_string(std::string_view s) {
  auto *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

ErrorChannel to_channel(mg_channel c) {
  switch (c) {
  case MG_FRONTAL:
    return ErrorChannel::frontal;
  case MG_YAW:
    return ErrorChannel::yaw;
  case MG_PITCH:
    return ErrorChannel::pitch;
  }
  throw UsageError("unknown error channel");
}

Platform platform_or_throw(const char *s) {
  require(s, "platform");
  const auto p = parse_platform(s);
  if (!p)
    throw UsageError(std::string("unknown platform '") + s + "'");
  return *p;
}

Condition condition_or_throw(const char *s) {
  require(s, "condition");
  const auto c = parse_condition(s);
  if (!c)
    throw UsageError(std::string("unknown condition '") + s + "'");
  return *c;
}

CleanOptions to_clean(const mg_clean_params *p) {
  CleanOptions o;
  if (!p)
    return o;
  if (p->method) {
    const auto m = parse_clean_method(p->method);
    if (!m)
      throw UsageError(std::string("unknown cleaning method '") + p->method + "'");
    o.method = *m;
  }
  o.kernel_w = p->kernel;
  o.mad_k = p->mad_k;
  return o;
}

AugmentParams to_augment(const mg_augment_params *p) {
  AugmentParams a;
  if (!p)
    return a;
  a.sigma = p->sigma;
  a.pink_alpha = p->pink_alpha;
  a.pink_sigma = p->pink_sigma;
  a.interp_offset = p->interp_offset;
  a.window = p->window;
  a.shift = p->shift;
  a.highpass_hz = p->highpass_hz;
  a.sample_rate_hz = p->sample_rate_hz;
  return a;
}

ModelSpec to_spec(const mg_model_spec *s) {
  require(s, "spec");
  ModelSpec spec;
  require(s->family, "spec->family");
  const auto f = parse_model_family(s->family);
  if (!f)
    throw UsageError(std::string("unknown model family '") + s->family + "'");
  spec.family = *f;
  spec.k = s->k;
  spec.C = s->C;
  spec.gamma = s->gamma;
  if (s->n_hidden < 1 || s->n_hidden > MG_MAX_LAYERS)
    throw UsageError("MLP needs 1.." + std::to_string(MG_MAX_LAYERS) +
                     " hidden layers");
  spec.mlp.hidden.assign(s->hidden, s->hidden + s->n_hidden);
  spec.mlp.l2_alpha = s->alpha;
  spec.mlp.epochs = s->epochs;
  spec.n_estimators = s->n_estimators;
  spec.max_depth = s->max_depth;
  spec.seed = s->seed;
  return spec;
}

void from_spec(const ModelSpec &spec, mg_model_spec *out) {
  mg_model_spec_init(out);
  static const char *const names[] = {"knn", "svm", "mlp", "forest"};
  out->family = names[static_cast<int>(spec.family)];
  out->k = spec.k;
  out->C = spec.C;
  out->gamma = spec.gamma;
  out->n_hidden = static_cast<int>(std::min<std::size_t>(spec.mlp.hidden.size(),
                                                         MG_MAX_LAYERS));
  for (int i = 0; i < out->n_hidden; ++i)
    out->hidden[i] = spec.mlp.hidden[static_cast<std::size_t>(i)];
  out->alpha = spec.mlp.l2_alpha;
  out->epochs = spec.mlp.epochs;
  out->n_estimators = spec.n_estimators;
  out->max_depth = spec.max_depth;
  out->seed = spec.seed;
}

void fill_report(const ClassificationReport &rep,
                 const std::vector<std::string> &names, mg_report *out) {
  auto cm = rep.confusion;
  cm.class_names = names;
  out->confusion_csv = dup_string(format_confusion_csv(cm));
  out->rates_csv = dup_string(format_rates_csv(rep.rates, names));
  out->accuracy = rep.rates.accuracy;
  out->tpr = rep.rates.tpr;
  out->fpr = rep.rates.fpr;
  out->tnr = rep.rates.tnr;
  out->fnr = rep.rates.fnr;
  out->precision = rep.rates.precision;
}

std::vector<AngleSample> default_aoi_angles(const SessionMeta &meta) {
  const auto screen = meta.platform == Platform::desktop ? ScreenConfig::desktop()
                                                         : ScreenConfig::tablet();
  std::vector<AngleSample> out;
  for (const auto &p : make_aoi_grid(screen))
    out.push_back(gt_angles(relative_to_origin(p, screen), screen,
                            meta.user_distance_mm));
  return out;
}

} // namespace

extern "C" {

const char *mg_version(void) { return "1.0.0"; }

const char *mg_last_error(void) { return g_last_error.c_str(); }

const char *mg_status_name(mg_status status) {
  switch (status) {
  case MG_OK:
    return "ok";
  case MG_ERR_USAGE:
    return "usage error";
  case MG_ERR_DATA:
    return "data error";
  case MG_ERR_NUMERIC:
    return "numeric error";
  case MG_ERR_IO:
    return "i/o error";
  case MG_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

void mg_string_free(char *s) { std::free(s); }

uint64_t mg_derive_seed(uint64_t seed, uint64_t stream) {
  return derive_seed(seed, stream);
}

// ---------------------------------------------------------------- sessions

void mg_synth_params_init(mg_synth_params *p) {
  if (!p)
    return;
  p->platform = "desktop";
  p->condition = "UD60";
  p->participant = "P01";
  p->mean_error = NAN;
  p->mad = NAN;
  p->mode = nullptr;
  p->user_distance_mm = NAN;
  p->samples_per_aoi = 0;
  p->seed = 0;
}

mg_status mg_session_synth(const mg_synth_params *p, mg_session **out) {
  return guarded([&] {
    require(p, "params");
    require(out, "out");
    *out = nullptr;
    const auto platform = platform_or_throw(p->platform);
    const auto condition = condition_or_throw(p->condition);
    auto profile = default_profile(platform, condition);
    if (!std::isnan(p->mean_error))
      profile.mean_error = p->mean_error;
    if (!std::isnan(p->mad))
      profile.mad = p->mad;
    if (p->mode) {
      const auto m = parse_spatial_mode(p->mode);
      if (!m)
        throw UsageError(std::string("unknown spatial mode '") + p->mode + "'");
      profile.mode = *m;
    }
    SessionMeta meta;
    meta.participant_id = p->participant ? p->participant : "P01";
    meta.platform = platform;
    meta.condition = condition;
    meta.user_distance_mm = std::isnan(p->user_distance_mm)
                                ? nominal_distance_mm(condition)
                                : p->user_distance_mm;
    SynthOptions opts;
    if (p->samples_per_aoi > 0)
      opts.samples_per_aoi = p->samples_per_aoi;
    const auto screen = platform == Platform::desktop ? ScreenConfig::desktop()
                                                      : ScreenConfig::tablet();
    *out = new mg_session{synth_session(profile, screen, meta, p->seed, opts)};
  });
}

mg_status mg_session_load(const char *path, mg_session **out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new mg_session{load_session(path)};
  });
}

mg_status mg_session_save(const mg_session *s, const char *path) {
  return guarded([&] {
    require(s, "session");
    require(path, "path");
    save_session(s->value, path);
  });
}

void mg_session_free(mg_session *s) { delete s; }

mg_status mg_session_meta(const mg_session *s, char **participant,
                          char **platform, char **condition) {
  return guarded([&] {
    require(s, "session");
    if (participant)
      *participant = dup_string(s->value.meta.participant_id);
    if (platform)
      *platform = dup_string(to_string(s->value.meta.platform));
    if (condition)
      *condition = dup_string(to_string(s->value.meta.condition));
  });
}

size_t mg_session_size(const mg_session *s) {
  return s ? s->value.records.size() : 0;
}

// ---------------------------------------------------------------- errors

void mg_clean_params_init(mg_clean_params *p) {
  if (!p)
    return;
  p->method = "median";
  p->kernel = 41;
  p->mad_k = 3.0;
}

mg_status mg_errors_compute(const mg_session *s, const mg_clean_params *clean,
                            mg_errors **out) {
  return guarded([&] {
    require(s, "session");
    require(out, "out");
    *out = nullptr;
    const auto filled = fill_missing(s->value);
    const auto raw = compute_errors(filled);
    *out = new mg_errors{{s->value.meta, clean_errors(raw, to_clean(clean)), {}}};
  });
}

mg_status mg_errors_clean(const mg_errors *e, const mg_clean_params *clean,
                          mg_errors **out) {
  return guarded([&] {
    require(e, "errors");
    require(out, "out");
    *out = nullptr;
    auto rec = e->value;
    rec.errors = clean_errors(rec.errors, to_clean(clean));
    *out = new mg_errors{std::move(rec)};
  });
}

mg_status mg_errors_load(const char *path, mg_errors **out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new mg_errors{load_error_recording(path)};
  });
}

mg_status mg_errors_save(const mg_errors *e, const char *path) {
  return guarded([&] {
    require(e, "errors");
    require(path, "path");
    save_error_recording(e->value, path);
  });
}

void mg_errors_free(mg_errors *e) { delete e; }

size_t mg_errors_size(const mg_errors *e) {
  return e ? e->value.errors.size() : 0;
}

mg_status mg_errors_channel(const mg_errors *e, mg_channel channel, double *out,
                            size_t capacity) {
  return guarded([&] {
    require(e, "errors");
    const auto &v = e->value.errors.channel(to_channel(channel));
    if (capacity < v.size())
      throw UsageError("output buffer holds " + std::to_string(capacity) +
                       " values, need " + std::to_string(v.size()));
    if (!v.empty()) {
      require(out, "out");
      std::copy(v.begin(), v.end(), out);
    }
  });
}

mg_status mg_errors_describe(const mg_errors *e, mg_channel channel,
                             mg_stats *out) {
  return guarded([&] {
    require(e, "errors");
    require(out, "out");
    const auto d = describe(e->value.errors.channel(to_channel(channel)));
    *out = {d.mean, d.sd, d.mad, d.iqr, d.ci95_low, d.ci95_high, d.n};
  });
}

mg_status mg_errors_kde_csv(const mg_errors *e, mg_channel channel,
                            double bandwidth, size_t points, char **csv) {
  return guarded([&] {
    require(e, "errors");
    require(csv, "csv");
    const auto &x = e->value.errors.channel(to_channel(channel));
    const auto grid = kde_grid(x, bandwidth, points);
    const auto curve = kde(x, bandwidth, grid);
    std::ostringstream s;
    s << "x,density\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      s << text::format_double(grid[i]) << ','
        << text::format_double(curve.densities[i]) << '\n';
    *csv = dup_string(s.str());
  });
}

mg_status mg_errors_spatial_csv(const mg_errors *e, const mg_session *s,
                                char **csv) {
  return guarded([&] {
    require(e, "errors");
    require(csv, "csv");
    const auto angles =
        s ? aoi_gt_angles(s->value) : default_aoi_angles(e->value.meta);
    const auto map = spatial_error_map(e->value.errors, angles);
    std::ostringstream out;
    out << "aoi_id,gt_yaw,gt_pitch,mean_abs_error,samples\n";
    for (const auto &c : map.cells)
      out << c.aoi_id << ',' << text::format_double(c.gt_yaw) << ','
          << text::format_double(c.gt_pitch) << ','
          << (c.mean_abs_error ? text::format_double(*c.mean_abs_error) : "NaN")
          << ',' << c.samples << '\n';
    *csv = dup_string(out.str());
  });
}

mg_status mg_correlation_csv(const mg_errors *const *series,
                             const char *const *names, size_t count,
                             mg_channel channel, char **csv) {
  return guarded([&] {
    require(csv, "csv");
    if (count < 2)
      throw UsageError("correlation needs at least two series");
    require(series, "series");
    require(names, "names");
    std::vector<NamedErrors> named;
    for (std::size_t i = 0; i < count; ++i) {
      require(series[i], "series entry");
      named.push_back({names[i] ? names[i] : std::to_string(i),
                       &series[i]->value.errors});
    }
    const auto cm = correlation_matrix(named, to_channel(channel));
    std::ostringstream out;
    out << "series";
    for (const auto &n : cm.names)
      out << ',' << n;
    out << '\n';
    for (std::size_t r = 0; r < cm.names.size(); ++r) {
      out << cm.names[r];
      for (const auto &v : cm.r[r])
        out << ',' << (v ? text::format_double(*v) : "NaN");
      out << '\n';
    }
    *csv = dup_string(out.str());
  });
}

void mg_augment_params_init(mg_augment_params *p) {
  if (!p)
    return;
  const AugmentParams d;
  p->sigma = d.sigma;
  p->pink_alpha = d.pink_alpha;
  p->pink_sigma = d.pink_sigma;
  p->interp_offset = d.interp_offset;
  p->window = d.window;
  p->shift = d.shift;
  p->highpass_hz = d.highpass_hz;
  p->sample_rate_hz = d.sample_rate_hz;
}

mg_status mg_errors_augment(const mg_errors *e, uint64_t seed,
                            const mg_augment_params *p,
                            mg_errors *out[MG_VARIANTS]) {
  return guarded([&] {
    require(e, "errors");
    require(out, "out");
    for (int i = 0; i < MG_VARIANTS; ++i)
      out[i] = nullptr;
    const auto set = augment_sample(e->value.errors, seed, to_augment(p));
    std::vector<std::unique_ptr<mg_errors>> made;
    for (const auto &v : set.variants)
      made.push_back(std::make_unique<mg_errors>(
          mg_errors{{e->value.meta, v.errors, std::string(to_string(v.tag))}}));
    for (std::size_t i = 0; i < made.size(); ++i)
      out[i] = made[i].release();
  });
}

const char *mg_errors_tag(const mg_errors *e) {
  if (!e || e->value.augmented_by.empty())
    return nullptr;
  return e->value.augmented_by.c_str();
}

// ---------------------------------------------------------------- features

void mg_assemble_params_init(mg_assemble_params *p) {
  if (!p)
    return;
  p->task = "user_distance";
  p->platform = "desktop";
  p->augment = 1;
  p->reduced = 0;
  p->signed_mean = 0;
  p->seed = 0;
}

mg_status mg_matrix_assemble(const mg_errors *const *errors, size_t count,
                             const mg_assemble_params *p, mg_matrix **out) {
  return guarded([&] {
    require(p, "params");
    require(out, "out");
    *out = nullptr;
    if (count > 0)
      require(errors, "errors");
    AssembleOptions o;
    require(p->task, "task");
    const auto task = parse_task(p->task);
    if (!task)
      throw UsageError(std::string("unknown task '") + p->task + "'");
    o.task = *task;
    if (p->platform)
      o.platform = platform_or_throw(p->platform);
    o.augment = p->augment != 0;
    o.feature_set = p->reduced ? FeatureSet::reduced : FeatureSet::full;
    o.magnitude = p->signed_mean == 0;
    o.seed = p->seed;
    std::vector<LabeledErrors> in;
    for (std::size_t i = 0; i < count; ++i) {
      require(errors[i], "errors entry");
      in.push_back({errors[i]->value.meta, errors[i]->value.errors});
    }
    *out = new mg_matrix{assemble_dataset(in, o)};
  });
}

mg_status mg_matrix_load(const char *path, mg_matrix **out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new mg_matrix{load_feature_matrix(path)};
  });
}

mg_status mg_matrix_save(const mg_matrix *m, const char *path) {
  return guarded([&] {
    require(m, "matrix");
    require(path, "path");
    save_feature_matrix(m->value, path);
  });
}

void mg_matrix_free(mg_matrix *m) { delete m; }

mg_status mg_matrix_shape(const mg_matrix *m, size_t *rows, size_t *cols,
                          size_t *classes) {
  return guarded([&] {
    require(m, "matrix");
    if (rows)
      *rows = m->value.size();
    if (cols)
      *cols = m->value.cols();
    if (classes)
      *classes = m->value.n_classes();
  });
}

mg_status mg_matrix_split(const mg_matrix *m, double test_frac,
                          int by_participant, uint64_t seed, mg_matrix **train,
                          mg_matrix **test) {
  return guarded([&] {
    require(m, "matrix");
    require(train, "train");
    require(test, "test");
    *train = *test = nullptr;
    auto split = by_participant ? participant_split(m->value, test_frac, seed)
                                : shuffle_split(m->value, test_frac, seed);
    auto tr = std::make_unique<mg_matrix>(mg_matrix{std::move(split.train)});
    auto te = std::make_unique<mg_matrix>(mg_matrix{std::move(split.test)});
    *train = tr.release();
    *test = te.release();
  });
}

mg_status mg_tsne_csv(const mg_matrix *m, double perplexity, int dims,
                      int iterations, uint64_t seed, char **csv, double kl[2]) {
  return guarded([&] {
    require(m, "matrix");
    require(csv, "csv");
    TsneOptions o;
    o.perplexity = perplexity;
    o.out_dims = dims;
    if (iterations > 0)
      o.iterations = iterations;
    const auto scaled = standardize(m->value);
    const auto r = tsne(scaled, seed, o);
    std::ostringstream out;
    static const char *const axes[] = {"x", "y", "z"};
    for (int d = 0; d < dims; ++d)
      out << (d < 3 ? axes[d] : ("d" + std::to_string(d + 1)).c_str()) << ',';
    out << "label\n";
    for (std::size_t i = 0; i < r.coords.size(); ++i) {
      for (double v : r.coords[i])
        out << text::format_double(v) << ',';
      out << m->value.class_names[static_cast<std::size_t>(m->value.labels[i])]
          << '\n';
    }
    *csv = dup_string(out.str());
    if (kl) {
      kl[0] = r.kl_trace.front();
      kl[1] = r.kl_trace.back();
    }
  });
}

mg_status mg_importance_csv(const mg_matrix *m, int n_estimators, int max_depth,
                            uint64_t seed, char **csv) {
  return guarded([&] {
    require(m, "matrix");
    require(csv, "csv");
    const auto imp =
        forest_importance(standardize(m->value), n_estimators, max_depth, seed);
    std::ostringstream out;
    out << "feature,importance\n";
    for (std::size_t j = 0; j < imp.size(); ++j)
      out << (j < m->value.column_names.size() ? m->value.column_names[j]
                                               : std::to_string(j))
          << ',' << text::format_double(imp[j]) << '\n';
    *csv = dup_string(out.str());
  });
}

// ---------------------------------------------------------------- models

void mg_model_spec_init(mg_model_spec *spec) {
  if (!spec)
    return;
  const ModelSpec d;
  spec->family = "knn";
  spec->k = d.k;
  spec->C = d.C;
  spec->gamma = d.gamma;
  for (int i = 0; i < MG_MAX_LAYERS; ++i)
    spec->hidden[i] = 0;
  spec->n_hidden = static_cast<int>(d.mlp.hidden.size());
  for (int i = 0; i < spec->n_hidden; ++i)
    spec->hidden[i] = d.mlp.hidden[static_cast<std::size_t>(i)];
  spec->alpha = d.mlp.l2_alpha;
  spec->epochs = d.mlp.epochs;
  spec->n_estimators = d.n_estimators;
  spec->max_depth = d.max_depth;
  spec->seed = 0;
}

mg_status mg_model_train(const mg_matrix *train, const mg_model_spec *spec,
                         mg_model **out) {
  return guarded([&] {
    require(train, "matrix");
    require(out, "out");
    *out = nullptr;
    *out = new mg_model{fit_classifier(train->value, to_spec(spec))};
  });
}

mg_status mg_model_load(const char *path, mg_model **out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new mg_model{load_classifier(path)};
  });
}

mg_status mg_model_save(const mg_model *m, const char *path) {
  return guarded([&] {
    require(m, "model");
    require(path, "path");
    save_classifier(m->value, path);
  });
}

void mg_model_free(mg_model *m) { delete m; }

mg_status mg_model_predict(const mg_model *model, const mg_matrix *m, int *out,
                           size_t capacity) {
  return guarded([&] {
    require(model, "model");
    require(m, "matrix");
    if (capacity < m->value.size())
      throw UsageError("prediction buffer too small");
    const auto pred = predict(model->value, m->value.rows);
    if (!pred.empty()) {
      require(out, "out");
      std::copy(pred.begin(), pred.end(), out);
    }
  });
}

void mg_report_clear(mg_report *r) {
  if (!r)
    return;
  std::free(r->confusion_csv);
  std::free(r->rates_csv);
  *r = mg_report{};
}

mg_status mg_model_evaluate(const mg_model *model, const mg_matrix *m,
                            mg_report *out) {
  return guarded([&] {
    require(model, "model");
    require(m, "matrix");
    require(out, "out");
    *out = mg_report{};
    if (model->value.class_names != m->value.class_names)
      throw DataError("model classes do not match the matrix classes");
    const auto pred = predict(model->value, m->value.rows);
    const auto rep = classification_report(m->value.labels, pred,
                                           m->value.n_classes());
    fill_report(rep, m->value.class_names, out);
  });
}

mg_status mg_cross_validate(const mg_matrix *m, const mg_model_spec *spec,
                            int folds, uint64_t seed, double *mean,
                            char **cv_csv, mg_report *report) {
  return guarded([&] {
    require(m, "matrix");
    const auto cv = kfold_cv(m->value, to_spec(spec), folds, seed);
    if (mean)
      *mean = cv.mean;
    if (cv_csv)
      *cv_csv = dup_string(format_cv_csv(cv));
    if (report) {
      *report = mg_report{};
      fill_report(classification_report(m->value.labels, cv.predicted,
                                        m->value.n_classes()),
                  m->value.class_names, report);
    }
  });
}

mg_status mg_grid_search(const mg_matrix *m, const mg_model_spec *spec,
                         int folds, uint64_t seed, char **grid_csv,
                         mg_model_spec *best) {
  return guarded([&] {
    require(m, "matrix");
    const auto base = to_spec(spec);
    const auto g = grid_search(m->value, base.family, default_grid(base.family),
                               folds, seed, base);
    if (grid_csv)
      *grid_csv = dup_string(format_grid_csv(g));
    if (best)
      from_spec(g.table[g.best].spec, best);
  });
}

mg_status mg_learning_curve_csv(const mg_matrix *m, const mg_model_spec *spec,
                                const size_t *sizes, size_t n_sizes, int folds,
                                uint64_t seed, char **csv) {
  return guarded([&] {
    require(m, "matrix");
    require(csv, "csv");
    if (n_sizes > 0)
      require(sizes, "sizes");
    const std::vector<std::size_t> s(sizes, sizes + n_sizes);
    const auto lc = learning_curve(m->value, to_spec(spec), s, folds, seed);
    *csv = dup_string(format_learning_curve_csv(lc));
  });
}

// ---------------------------------------------------------------- regression

void mg_regress_params_init(mg_regress_params *p) {
  if (!p)
    return;
  const LinearOptions d;
  p->penalty = "elasticnet";
  p->strength = d.strength;
  p->mix = d.mix;
  p->degree = d.degree;
  p->test_frac = 0.25;
  p->seed = 0;
  mg_clean_params_init(&p->clean);
}

void mg_regress_result_clear(mg_regress_result *r) {
  if (!r)
    return;
  std::free(r->coef_csv);
  std::free(r->trace_csv);
  std::free(r->model);
  *r = mg_regress_result{};
}

mg_status mg_regress(const mg_session *const *sessions, size_t count,
                     const char *condition, const mg_regress_params *p,
                     mg_regress_result *out) {
  return guarded([&] {
    require(p, "params");
    require(out, "out");
    *out = mg_regress_result{};
    if (count == 0)
      throw UsageError("regression needs at least one session");
    require(sessions, "sessions");
    LinearOptions o;
    require(p->penalty, "penalty");
    const auto pen = parse_penalty(p->penalty);
    if (!pen)
      throw UsageError(std::string("unknown penalty '") + p->penalty + "'");
    o.penalty = *pen;
    o.strength = p->strength;
    o.mix = p->mix;
    o.degree = p->degree;
    const auto clean = to_clean(&p->clean);

    RegressionData data;
    for (std::size_t i = 0; i < count; ++i) {
      require(sessions[i], "session entry");
      const auto d = regression_data(fill_missing(sessions[i]->value), clean);
      data.x.insert(data.x.end(), d.x.begin(), d.x.end());
      data.y.insert(data.y.end(), d.y.begin(), d.y.end());
    }
    const auto fit = fit_error_regression(data, o, p->test_frac, p->seed);
    const std::string name =
        condition ? condition
                  : std::string(to_string(sessions[0]->value.meta.condition));

    mg_regress_result r{};
    r.b0 = fit.model.intercept;
    for (std::size_t j = 0; j < 3 && j < fit.model.w.size(); ++j)
      r.b[j] = fit.model.w[j];
    r.rmse_deg = fit.rmse_deg;
    r.rmse_std = fit.rmse_std;
    r.baseline_deg = fit.baseline_deg;
    r.baseline_std = fit.baseline_std;
    r.n_test = fit.test_truth_deg.size();
    r.n_train = data.y.size() - r.n_test;

    std::string coef;
    if (fit.model.degree == 1) {
      coef = format_error_models({export_error_model(fit.model, name)});
    } else {
      std::ostringstream c;
      c << "condition";
      for (std::size_t j = 0; j < fit.model.w.size(); ++j)
        c << ",w" << j + 1;
      c << ",b0\n" << name;
      for (double w : fit.model.w)
        c << ',' << text::format_double(w);
      c << ',' << text::format_double(fit.model.intercept) << '\n';
      coef = c.str();
    }
    std::ostringstream trace;
    trace << "index,actual,predicted\n";
    for (std::size_t i = 0; i < fit.test_truth_deg.size(); ++i)
      trace << i << ',' << text::format_double(fit.test_truth_deg[i]) << ','
            << text::format_double(fit.test_pred_deg[i]) << '\n';

    r.coef_csv = dup_string(coef);
    r.trace_csv = dup_string(trace.str());
    r.model = dup_string(format_linear_model(fit.model, fit.x_scale, fit.y_scale));
    *out = r;
  });
}

} // extern "C"
