/*
 * SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

/* C interface to the mlgaze library.
 *
 * Objects are opaque handles released with their *_free function. Every call
 * returns an mg_status; on failure mg_last_error() describes the problem for
 * the calling thread. Strings handed out through `char **` parameters are
 * owned by the caller and released with mg_string_free().
 */

#ifndef MLGAZE_H
#define MLGAZE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MLGAZE_BUILDING)
#define MG_API __declspec(dllexport)
#else
#define MG_API __declspec(dllimport)
#endif
#else
#define MG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mg_status {
  MG_OK = 0,
  MG_ERR_USAGE = 1,   /* bad argument or configuration */
  MG_ERR_DATA = 2,    /* malformed or insufficient input data */
  MG_ERR_NUMERIC = 3, /* non-convergence, NaN */
  MG_ERR_IO = 4,
  MG_ERR_INTERNAL = 5
} mg_status;

typedef struct mg_session mg_session; /* one recording: raw gaze samples */
typedef struct mg_errors mg_errors;   /* angular error series + metadata */
typedef struct mg_matrix mg_matrix;   /* labeled feature matrix */
typedef struct mg_model mg_model;     /* trained classifier */

MG_API const char *mg_version(void);
MG_API const char *mg_last_error(void);
MG_API const char *mg_status_name(mg_status status);
MG_API void mg_string_free(char *s);

/* Mixes a stream index into a seed; neighbouring streams are unrelated. */
MG_API uint64_t mg_derive_seed(uint64_t seed, uint64_t stream);

/* ------------------------------------------------------------ sessions */

typedef struct mg_synth_params {
  const char *platform;    /* "desktop" or "tablet" */
  const char *condition;   /* e.g. "UD60", "head_roll20" */
  const char *participant; /* participant id */
  double mean_error;       /* deg; NaN keeps the calibrated default */
  double mad;              /* deg; NaN keeps the calibrated default */
  const char *mode;        /* spatial mode; NULL keeps the default */
  double user_distance_mm; /* NaN uses the condition's nominal distance */
  int samples_per_aoi;     /* <= 0 uses 41 */
  uint64_t seed;
} mg_synth_params;

MG_API void mg_synth_params_init(mg_synth_params *p);
MG_API mg_status mg_session_synth(const mg_synth_params *p, mg_session **out);
MG_API mg_status mg_session_load(const char *path, mg_session **out);
MG_API mg_status mg_session_save(const mg_session *s, const char *path);
MG_API void mg_session_free(mg_session *s);

/* Copies of the metadata strings; free with mg_string_free. */
MG_API mg_status mg_session_meta(const mg_session *s, char **participant,
                                 char **platform, char **condition);
MG_API size_t mg_session_size(const mg_session *s);

/* ------------------------------------------------------------ errors */

typedef enum mg_channel {
  MG_FRONTAL = 0,
  MG_YAW = 1,
  MG_PITCH = 2
} mg_channel;

typedef struct mg_clean_params {
  const char *method; /* "none", "median", "mad", "iqr" */
  int kernel;         /* median filter width */
  double mad_k;
} mg_clean_params;

MG_API void mg_clean_params_init(mg_clean_params *p);

/* Fills missing samples, computes angular errors and cleans them. */
MG_API mg_status mg_errors_compute(const mg_session *s,
                                   const mg_clean_params *clean,
                                   mg_errors **out);
/* Cleans an existing error series. */
MG_API mg_status mg_errors_clean(const mg_errors *e,
                                 const mg_clean_params *clean, mg_errors **out);
MG_API mg_status mg_errors_load(const char *path, mg_errors **out);
MG_API mg_status mg_errors_save(const mg_errors *e, const char *path);
MG_API void mg_errors_free(mg_errors *e);
MG_API size_t mg_errors_size(const mg_errors *e);

/* Copies up to `capacity` values of a channel into `out`. */
MG_API mg_status mg_errors_channel(const mg_errors *e, mg_channel channel,
                                   double *out, size_t capacity);

typedef struct mg_stats {
  double mean, sd, mad, iqr, ci95_low, ci95_high;
  size_t n;
} mg_stats;

MG_API mg_status mg_errors_describe(const mg_errors *e, mg_channel channel,
                                    mg_stats *out);

/* CSV `x,density` over min-4h .. max+4h. */
MG_API mg_status mg_errors_kde_csv(const mg_errors *e, mg_channel channel,
                                   double bandwidth, size_t points, char **csv);

/* CSV `aoi_id,gt_yaw,gt_pitch,mean_abs_error,samples`; AOI angles come from
 * the session the errors were computed from. */
MG_API mg_status mg_errors_spatial_csv(const mg_errors *e, const mg_session *s,
                                       char **csv);

/* Pearson correlation of the per-AOI error vectors of several series, as a
 * square CSV labeled by `names`. */
MG_API mg_status mg_correlation_csv(const mg_errors *const *series,
                                    const char *const *names, size_t count,
                                    mg_channel channel, char **csv);

typedef struct mg_augment_params {
  double sigma, pink_alpha, pink_sigma, interp_offset;
  int window, shift;
  double highpass_hz;    /* pink jitter high-pass cutoff; 0 disables */
  double sample_rate_hz; /* series sample rate for the cutoff */
} mg_augment_params;

MG_API void mg_augment_params_init(mg_augment_params *p);

#define MG_VARIANTS 10

/* Writes MG_VARIANTS handles into `out`; each is tagged with its strategy. */
MG_API mg_status mg_errors_augment(const mg_errors *e, uint64_t seed,
                                   const mg_augment_params *p,
                                   mg_errors *out[MG_VARIANTS]);
/* Augmentation tag, or NULL for an original series. Owned by the handle. */
MG_API const char *mg_errors_tag(const mg_errors *e);

/* ------------------------------------------------------------ features */

typedef struct mg_assemble_params {
  const char *task;     /* user_distance, head_pose, platform_pose, mixed */
  const char *platform; /* mixed task only */
  int augment;          /* nonzero: 10 variants per session */
  int reduced;          /* nonzero: 5 statistics columns only */
  int signed_mean;      /* nonzero: signed per-AOI means */
  uint64_t seed;
} mg_assemble_params;

MG_API void mg_assemble_params_init(mg_assemble_params *p);
MG_API mg_status mg_matrix_assemble(const mg_errors *const *errors,
                                    size_t count, const mg_assemble_params *p,
                                    mg_matrix **out);
MG_API mg_status mg_matrix_load(const char *path, mg_matrix **out);
MG_API mg_status mg_matrix_save(const mg_matrix *m, const char *path);
MG_API void mg_matrix_free(mg_matrix *m);
MG_API mg_status mg_matrix_shape(const mg_matrix *m, size_t *rows, size_t *cols,
                                 size_t *classes);
MG_API mg_status mg_matrix_split(const mg_matrix *m, double test_frac,
                                 int by_participant, uint64_t seed,
                                 mg_matrix **train, mg_matrix **test);

/* t-SNE embedding as CSV `x,y,label`; `dims` must be 2. `kl` receives the
 * first and last recorded KL values. */
MG_API mg_status mg_tsne_csv(const mg_matrix *m, double perplexity, int dims,
                             int iterations, uint64_t seed, char **csv,
                             double kl[2]);

/* CSV `feature,importance`, computed on standardized rows. */
MG_API mg_status mg_importance_csv(const mg_matrix *m, int n_estimators,
                                   int max_depth, uint64_t seed, char **csv);

/* ------------------------------------------------------------ models */

#define MG_MAX_LAYERS 8

typedef struct mg_model_spec {
  const char *family; /* knn, svm, mlp, forest */
  int k;
  double C, gamma;
  int hidden[MG_MAX_LAYERS];
  int n_hidden;
  double alpha;
  int epochs;
  int n_estimators, max_depth;
  uint64_t seed;
} mg_model_spec;

MG_API void mg_model_spec_init(mg_model_spec *spec);
MG_API mg_status mg_model_train(const mg_matrix *train,
                                const mg_model_spec *spec, mg_model **out);
MG_API mg_status mg_model_load(const char *path, mg_model **out);
MG_API mg_status mg_model_save(const mg_model *m, const char *path);
MG_API void mg_model_free(mg_model *m);

/* Predicted class ids of every row; `capacity` must cover the rows. */
MG_API mg_status mg_model_predict(const mg_model *model, const mg_matrix *m,
                                  int *out, size_t capacity);

typedef struct mg_report {
  char *confusion_csv;
  char *rates_csv;
  double accuracy;
  double tpr, fpr, tnr, fnr, precision;
} mg_report;

MG_API void mg_report_clear(mg_report *r);

/* Scores a trained model on a labeled matrix. Class names must agree. */
MG_API mg_status mg_model_evaluate(const mg_model *model, const mg_matrix *m,
                                   mg_report *out);

/* Stratified k-fold CV; `report` covers the pooled out-of-fold predictions. */
MG_API mg_status mg_cross_validate(const mg_matrix *m, const mg_model_spec *spec,
                                   int folds, uint64_t seed, double *mean,
                                   char **cv_csv, mg_report *report);

/* Grid search over the default grid of spec->family with any varied
 * parameters fixed from `spec`. `best` receives the winning spec; its
 * family string points at static storage. */
MG_API mg_status mg_grid_search(const mg_matrix *m, const mg_model_spec *spec,
                                int folds, uint64_t seed, char **grid_csv,
                                mg_model_spec *best);

MG_API mg_status mg_learning_curve_csv(const mg_matrix *m,
                                       const mg_model_spec *spec,
                                       const size_t *sizes, size_t n_sizes,
                                       int folds, uint64_t seed, char **csv);

/* ------------------------------------------------------------ regression */

typedef struct mg_regress_params {
  const char *penalty; /* none, ridge, lasso, elasticnet */
  double strength;
  double mix;
  int degree;
  double test_frac;
  uint64_t seed;
  mg_clean_params clean;
} mg_regress_params;

typedef struct mg_regress_result {
  double b0, b[3];
  double rmse_deg, rmse_std, baseline_deg, baseline_std;
  size_t n_train, n_test;
  char *coef_csv;  /* condition,b1,b2,b3,b0 */
  char *trace_csv; /* index,actual,predicted (held-out, degrees) */
  char *model;     /* persisted linear model */
} mg_regress_result;

MG_API void mg_regress_params_init(mg_regress_params *p);
MG_API void mg_regress_result_clear(mg_regress_result *r);

/* Pools the sessions, maps [gaze angle, yaw, pitch] to frontal error. */
MG_API mg_status mg_regress(const mg_session *const *sessions, size_t count,
                            const char *condition, const mg_regress_params *p,
                            mg_regress_result *out);

#ifdef __cplusplus
}
#endif

#endif /* MLGAZE_H */
