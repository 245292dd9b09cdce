// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include "mlgaze/mlgaze.h"

#include <CLI11.hpp>

#include <functional>
#include <iostream>

namespace {

void assemble_options(CLI::App *cmd, cli::AssembleArgs &a) {
  cmd->add_option("--task", a.task,
                  "user_distance, head_pose, platform_pose or mixed")
      ->capture_default_str();
  cmd->add_option("--platform", a.platform, "platform of the mixed task")
      ->capture_default_str();
  cmd->add_flag("--no-augment", a.no_augment, "one row per session and category");
  cmd->add_flag("--reduced", a.reduced, "statistics columns only");
  cmd->add_flag("--signed", a.signed_mean, "signed per-AOI means");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Gaze error analysis: cleaning, statistics, augmentation, "
               "classification and regression"};
  app.set_version_flag("--version", mg_version());
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);

  cli::Global g;
  std::string out = ".";
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_flag("--plot", g.plot, "also write SVG figures");
  app.add_option("--out", out, "output directory")->capture_default_str();

  std::function<void()> action;

  cli::SynthArgs synth;
  auto *s = app.add_subcommand("synth", "generate synthetic recordings");
  s->add_option("--platform", synth.platform, "desktop or tablet")
      ->capture_default_str();
  s->add_option("--conditions", synth.conditions, "conditions to record");
  s->add_option("--participants", synth.participants)
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  s->add_option("--mean", synth.mean, "mean frontal error (deg)");
  s->add_option("--mad", synth.mad, "error MAD (deg)");
  s->add_option("--mode", synth.mode,
                "uniform, radial, yaw_skewed or pitch_skewed");
  s->add_option("--distance", synth.distance, "user distance (mm)");
  s->add_option("--samples-per-aoi", synth.samples_per_aoi)
      ->check(CLI::PositiveNumber);
  s->callback([&] { action = [&] { cli::run_synth(g, synth); }; });

  cli::CleanArgs clean;
  auto *c = app.add_subcommand("clean", "compute and clean angular errors");
  c->add_option("--input", clean.inputs, "session CSVs")->required();
  c->add_option("--method", clean.method, "none, median, mad or iqr")
      ->capture_default_str();
  c->add_option("--kernel", clean.kernel, "median filter width")
      ->capture_default_str();
  c->add_option("--mad-k", clean.mad_k)->capture_default_str();
  c->callback([&] { action = [&] { cli::run_clean(g, clean); }; });

  cli::StatsArgs stats;
  auto *st = app.add_subcommand("stats", "describe error series");
  st->add_option("--input", stats.inputs, "error CSVs")->required();
  st->add_option("--bandwidth", stats.bandwidth, "KDE bandwidth (deg)")
      ->capture_default_str();
  st->add_option("--points", stats.points, "KDE grid size")
      ->capture_default_str();
  st->callback([&] { action = [&] { cli::run_stats(g, stats); }; });

  cli::AugmentArgs aug;
  auto *au = app.add_subcommand("augment", "write the augmented variants");
  au->add_option("--input", aug.inputs, "error CSVs")->required();
  au->add_option("--sigma", aug.sigma, "Gaussian noise sd");
  au->add_option("--pink-sigma", aug.pink_sigma, "pink noise sd");
  au->add_option("--pink-alpha", aug.pink_alpha, "pink noise exponent");
  au->add_option("--window", aug.window, "raised-cosine window");
  au->add_option("--shift", aug.shift, "time shift (samples)");
  au->add_option("--highpass", aug.highpass_hz, "pink jitter high-pass cutoff (Hz, 30 Hz series)")
      ->capture_default_str();
  au->callback([&] { action = [&] { cli::run_augment(g, aug); }; });

  cli::FeaturesArgs feat;
  auto *f = app.add_subcommand("features", "assemble the feature matrix");
  f->add_option("--input", feat.assemble.inputs, "cleaned error CSVs")
      ->required();
  assemble_options(f, feat.assemble);
  f->add_flag("--importance", feat.importance, "random-forest importances");
  f->add_option("--n-estimators", feat.n_estimators)->capture_default_str();
  f->add_option("--max-depth", feat.max_depth)->capture_default_str();
  f->add_option("--test-frac", feat.test_frac, "also write train/test split");
  f->add_flag("--by-participant", feat.by_participant,
              "split whole participants");
  f->callback([&] { action = [&] { cli::run_features(g, feat); }; });

  cli::TsneArgs tsne;
  auto *t = app.add_subcommand("tsne", "embed a feature matrix");
  t->add_option("--input", tsne.input, "feature CSV")->required();
  t->add_option("--perplexity", tsne.perplexity)->capture_default_str();
  t->add_option("--dims", tsne.dims)->capture_default_str();
  t->add_option("--iterations", tsne.iterations)->capture_default_str();
  t->callback([&] { action = [&] { cli::run_tsne(g, tsne); }; });

  cli::TrainArgs train;
  auto *tr = app.add_subcommand("train", "cross-validate and fit a classifier");
  tr->add_option("--features", train.features,
                 "feature CSV (default: <out>/features.csv)");
  tr->add_option("--input", train.assemble.inputs,
                 "cleaned error CSVs, assembled on the fly");
  assemble_options(tr, train.assemble);
  tr->add_option("--model", train.model.family, "knn, svm, mlp or forest")
      ->capture_default_str();
  tr->add_option("--k", train.model.k)->capture_default_str();
  tr->add_option("--C", train.model.C)->capture_default_str();
  tr->add_option("--gamma", train.model.gamma)->capture_default_str();
  tr->add_option("--hidden", train.model.hidden, "hidden layer widths")
      ->delimiter(',');
  tr->add_option("--alpha", train.model.alpha, "MLP L2 penalty")
      ->capture_default_str();
  tr->add_option("--epochs", train.model.epochs)->capture_default_str();
  tr->add_option("--n-estimators", train.model.n_estimators)
      ->capture_default_str();
  tr->add_option("--max-depth", train.model.max_depth)->capture_default_str();
  tr->add_option("--cv", train.cv, "folds")->capture_default_str();
  tr->add_flag("--grid", train.grid, "grid search before fitting");
  tr->add_option("--learning-curve", train.learning_curve, "training sizes")
      ->delimiter(',');
  tr->add_option("--model-out", train.model_out,
                 "model file (default: <out>/model.txt)");
  tr->callback([&] { action = [&] { cli::run_train(g, train); }; });

  cli::EvaluateArgs eval;
  auto *e = app.add_subcommand("evaluate", "score a saved model");
  e->add_option("--model", eval.model)->required();
  e->add_option("--input", eval.input, "feature CSV")->required();
  e->callback([&] { action = [&] { cli::run_evaluate(g, eval); }; });

  cli::RegressArgs reg;
  auto *r = app.add_subcommand("regress", "fit gaze-error regression");
  r->add_option("--input", reg.inputs, "session CSVs")->required();
  r->add_option("--condition", reg.conditions, "conditions to fit");
  r->add_option("--penalty", reg.penalty, "none, ridge, lasso or elasticnet")
      ->capture_default_str();
  r->add_option("--strength", reg.strength)->capture_default_str();
  r->add_option("--mix", reg.mix, "L1 share of the elastic net")
      ->capture_default_str();
  r->add_option("--degree", reg.degree)->capture_default_str();
  r->add_option("--test-frac", reg.test_frac)->capture_default_str();
  r->add_option("--clean", reg.clean, "cleaning method")->capture_default_str();
  r->add_option("--kernel", reg.kernel)->capture_default_str();
  r->callback([&] { action = [&] { cli::run_regress(g, reg); }; });

  cli::ReportArgs rep;
  auto *rp = app.add_subcommand("report", "collect stage outputs into report.md");
  rp->add_option("--dir", rep.dir, "directory of stage outputs (default: --out)");
  rp->callback([&] { action = [&] { cli::run_report(g, rep); }; });

  for (auto *sub : app.get_subcommands({}))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  g.out = out;
  try {
    action();
  } catch (const cli::Failure &err) {
    std::cerr << "error: " << err.what() << '\n';
    return err.code();
  } catch (const std::exception &err) {
    std::cerr << "internal error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
