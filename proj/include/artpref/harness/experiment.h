// Copyright 2026 The Artpref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ARTPREF_HARNESS_EXPERIMENT_H_
#define ARTPREF_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "artpref/features.h"
#include "artpref/harness/ratings.h"
#include "artpref/harness/split.h"
#include "artpref/metrics.h"
#include "artpref/models/ols.h"
#include "artpref/models/trainers.h"

namespace artpref::harness {

enum class Setting { kAverage, kWithinRater, kCrossRater };
enum class ModelKind { kBaseline, kDeep, kComparative };

std::string_view SettingName(Setting s);
std::string_view ModelKindName(ModelKind m);
Setting ParseSetting(std::string_view text);
ModelKind ParseModelKind(std::string_view text);

// Hand-crafted features for the baseline, deep embeddings otherwise.
FeatureKind ExpectedFeatureKind(ModelKind model);

struct ExperimentConfig {
  TaskSpec task;
  Setting setting = Setting::kAverage;
  ModelKind model = ModelKind::kDeep;
  int n_pairs = 5;   // comparative only
  int runs = 10;
  uint64_t base_seed = 0;
  // Raters evaluated in the within/cross settings; empty means all.
  std::vector<int> raters;
  int workers = 1;
  // Hidden widths of the encoder; empty keeps 512/256/128.
  std::vector<int> hidden;
  // Overrides the 200 (deep) / 100 (comparative) epoch defaults.
  std::optional<int> epochs;
  int batch_size = 10;
};

// Seed of run k.
inline uint64_t RunSeed(uint64_t base_seed, int run) {
  return base_seed + static_cast<uint64_t>(run);
}

// rater 0 stands for the all-rater average.
struct RunRecord {
  std::string task;
  std::string setting;
  std::string model;
  int rater = 0;
  int n_pairs = 0;
  int run = 0;
  uint64_t seed = 0;
  metrics::MetricsReport metrics;
};

struct AggregateRow {
  std::string task;
  std::string setting;
  std::string model;
  int rater = 0;
  int n_pairs = 0;
  int runs = 0;
  double mae = 0.0;
  std::optional<double> r2;
  std::optional<double> pearson;
  std::optional<double> spearman;
  // Runs whose metric was undefined and left out of the mean.
  int excluded_r2 = 0;
  int excluded_pearson = 0;
  int excluded_spearman = 0;
};

struct ResultsReport {
  std::vector<RunRecord> runs;
  std::vector<AggregateRow> means;
};

// Groups records by (task, setting, model, rater, n_pairs), in first-seen
// order, and averages the defined values.
std::vector<AggregateRow> Aggregate(const std::vector<RunRecord>& records);

// Everything one run trains on and is scored against.
struct RunData {
  SplitSpec split;
  Targets train_targets;
  Targets truth;  // ground truth for the test items
};

// Builds the setting-specific targets for one run and rater (0 = average).
RunData PrepareRun(const ExperimentConfig& config, const RatingsTable& table,
                   int rater, uint64_t seed);

// What a run actually fed into training, for leakage audits.
struct RunTrace {
  std::vector<std::string> training_ids;
  std::vector<models::PairwiseExample> pairs;
  StandardizationStats standardization;
  // Exactly one is set after a successful run.
  std::optional<models::OlsModel> ols;
  std::optional<nn::EncoderModel> encoder;
};

// Trains one model on the run data and evaluates on the test items.
metrics::MetricsReport TrainAndEvaluate(const ExperimentConfig& config,
                                        const RunData& data,
                                        const std::vector<FeatureVector>& features,
                                        uint64_t seed,
                                        RunTrace* trace = nullptr);

// For run k in [0, runs): seed = base_seed + k, split, build targets, train,
// evaluate; within/cross settings repeat this for every selected rater. Runs
// execute on up to `workers` threads and the records come back in (run,
// rater) order regardless. A failing run aborts with its index.
ResultsReport RunExperiment(const ExperimentConfig& config,
                            const RatingsTable& table,
                            const std::vector<FeatureVector>& features);

models::TrainingConfig MakeTrainingConfig(const ExperimentConfig& config,
                                          int input_dim);

}  // namespace artpref::harness

#endif  // ARTPREF_HARNESS_EXPERIMENT_H_
