// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_TOOLS_COMMANDS_HPP
#define MLGAZE_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <limits>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace cli {

/// Carries the exit code of a failed command.
class Failure : public std::runtime_error {
public:
  Failure(int code, const std::string &what)
      : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

private:
  int code_;
};

struct Global {
  std::uint64_t seed = 0;
  bool plot = false;
  std::filesystem::path out = ".";
};

struct SynthArgs {
  std::string platform = "desktop";
  std::vector<std::string> conditions;
  int participants = 20;
  double mean = std::numeric_limits<double>::quiet_NaN();
  double mad = std::numeric_limits<double>::quiet_NaN();
  std::string mode;
  double distance = std::numeric_limits<double>::quiet_NaN();
  int samples_per_aoi = 0;
};

struct CleanArgs {
  std::vector<std::string> inputs;
  std::string method = "median";
  int kernel = 41;
  double mad_k = 3.0;
};

struct StatsArgs {
  std::vector<std::string> inputs;
  double bandwidth = 0.2;
  int points = 512;
};

struct AugmentArgs {
  std::vector<std::string> inputs;
  double sigma = std::numeric_limits<double>::quiet_NaN();
  double pink_sigma = std::numeric_limits<double>::quiet_NaN();
  double pink_alpha = std::numeric_limits<double>::quiet_NaN();
  int window = 0;
  int shift = -1;
  double highpass_hz = 0.0;
};

struct AssembleArgs {
  std::vector<std::string> inputs;
  std::string task = "user_distance";
  std::string platform = "desktop";
  bool no_augment = false;
  bool reduced = false;
  bool signed_mean = false;
};

struct FeaturesArgs {
  AssembleArgs assemble;
  bool importance = false;
  int n_estimators = 200;
  int max_depth = 8;
  double test_frac = 0.0;
  bool by_participant = false;
};

struct TsneArgs {
  std::string input;
  double perplexity = 80.0;
  int dims = 2;
  int iterations = 1000;
};

struct ModelArgs {
  std::string family = "knn";
  int k = 3;
  double C = 10.0;
  double gamma = 1.0;
  std::vector<int> hidden;
  double alpha = 1e-4;
  int epochs = 300;
  int n_estimators = 200;
  int max_depth = 8;
};

struct TrainArgs {
  AssembleArgs assemble; ///< used when error series are given
  std::string features;
  ModelArgs model;
  int cv = 10;
  bool grid = false;
  std::vector<std::size_t> learning_curve;
  std::string model_out;
};

struct EvaluateArgs {
  std::string model;
  std::string input;
};

struct RegressArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> conditions;
  std::string penalty = "elasticnet";
  double strength = 1.0;
  double mix = 0.5;
  int degree = 1;
  double test_frac = 0.25;
  std::string clean = "median";
  int kernel = 41;
};

struct ReportArgs {
  std::string dir;
};

void run_synth(const Global &g, const SynthArgs &a);
void run_clean(const Global &g, const CleanArgs &a);
void run_stats(const Global &g, const StatsArgs &a);
void run_augment(const Global &g, const AugmentArgs &a);
void run_features(const Global &g, const FeaturesArgs &a);
void run_tsne(const Global &g, const TsneArgs &a);
void run_train(const Global &g, const TrainArgs &a);
void run_evaluate(const Global &g, const EvaluateArgs &a);
void run_regress(const Global &g, const RegressArgs &a);
void run_report(const Global &g, const ReportArgs &a);

} // namespace cli

#endif // MLGAZE_TOOLS_COMMANDS_HPP
