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

#include "artpref/harness/experiment.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "artpref/error.h"
#include "artpref/models/pairs.h"
#include "artpref/nn/encoder.h"
#include "artpref/random.h"

namespace artpref::harness {
namespace {

// Stream ids for seeds derived from a run seed.
constexpr uint64_t kModelStream = 3;
constexpr uint64_t kPairStream = 4;

std::vector<FeatureVector> Select(
    const std::unordered_map<std::string, const FeatureVector*>& by_id,
    const std::vector<std::string>& ids) {
  std::vector<FeatureVector> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kUnknownItem, "no features for item " + id);
    }
    out.push_back(*it->second);
  }
  return out;
}

Eigen::VectorXd Lookup(const Targets& targets,
                       const std::vector<std::string>& ids) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(ids.size()));
  for (size_t k = 0; k < ids.size(); ++k) out(k) = targets.at(ids[k]);
  return out;
}

std::span<const double> AsSpan(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<size_t>(v.size())};
}

}  // namespace

std::string_view SettingName(Setting s) {
  switch (s) {
    case Setting::kAverage: return "average";
    case Setting::kWithinRater: return "within_rater";
    case Setting::kCrossRater: return "cross_rater";
  }
  return "";
}

std::string_view ModelKindName(ModelKind m) {
  switch (m) {
    case ModelKind::kBaseline: return "baseline";
    case ModelKind::kDeep: return "deep";
    case ModelKind::kComparative: return "comparative";
  }
  return "";
}

Setting ParseSetting(std::string_view text) {
  if (text == "average") return Setting::kAverage;
  if (text == "within_rater" || text == "within") return Setting::kWithinRater;
  if (text == "cross_rater" || text == "cross") return Setting::kCrossRater;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown setting '" + std::string(text) + "'");
}

ModelKind ParseModelKind(std::string_view text) {
  if (text == "baseline") return ModelKind::kBaseline;
  if (text == "deep") return ModelKind::kDeep;
  if (text == "comparative") return ModelKind::kComparative;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown model '" + std::string(text) + "'");
}

FeatureKind ExpectedFeatureKind(ModelKind model) {
  return model == ModelKind::kBaseline ? FeatureKind::kHandcrafted11
                                       : FeatureKind::kDeep2048;
}

models::TrainingConfig MakeTrainingConfig(const ExperimentConfig& config,
                                          int input_dim) {
  nn::EncoderConfig encoder =
      config.hidden.empty()
          ? nn::EncoderConfig::WithWidths(input_dim, {512, 256, 128})
          : nn::EncoderConfig::WithWidths(input_dim, config.hidden);
  models::TrainingConfig training =
      config.model == ModelKind::kComparative
          ? models::TrainingConfig::Comparative(std::move(encoder))
          : models::TrainingConfig::Regression(std::move(encoder));
  if (config.epochs) training.epochs = *config.epochs;
  training.batch_size = config.batch_size;
  return training;
}

std::vector<AggregateRow> Aggregate(const std::vector<RunRecord>& records) {
  using Key = std::tuple<std::string, std::string, std::string, int, int>;
  std::map<Key, size_t> slot;
  std::vector<AggregateRow> rows;
  struct Sums {
    double mae = 0.0, r2 = 0.0, pearson = 0.0, spearman = 0.0;
    int n_r2 = 0, n_pearson = 0, n_spearman = 0;
  };
  std::vector<Sums> sums;
  for (const auto& rec : records) {
    const Key key{rec.task, rec.setting, rec.model, rec.rater, rec.n_pairs};
    auto [it, inserted] = slot.emplace(key, rows.size());
    if (inserted) {
      AggregateRow row;
      row.task = rec.task;
      row.setting = rec.setting;
      row.model = rec.model;
      row.rater = rec.rater;
      row.n_pairs = rec.n_pairs;
      rows.push_back(row);
      sums.emplace_back();
    }
    AggregateRow& row = rows[it->second];
    Sums& s = sums[it->second];
    ++row.runs;
    s.mae += rec.metrics.mae;
    if (rec.metrics.r2) {
      s.r2 += *rec.metrics.r2;
      ++s.n_r2;
    } else {
      ++row.excluded_r2;
    }
    if (rec.metrics.pearson) {
      s.pearson += *rec.metrics.pearson;
      ++s.n_pearson;
    } else {
      ++row.excluded_pearson;
    }
    if (rec.metrics.spearman) {
      s.spearman += *rec.metrics.spearman;
      ++s.n_spearman;
    } else {
      ++row.excluded_spearman;
    }
  }
  for (size_t k = 0; k < rows.size(); ++k) {
    const Sums& s = sums[k];
    rows[k].mae = s.mae / rows[k].runs;
    if (s.n_r2 > 0) rows[k].r2 = s.r2 / s.n_r2;
    if (s.n_pearson > 0) rows[k].pearson = s.pearson / s.n_pearson;
    if (s.n_spearman > 0) rows[k].spearman = s.spearman / s.n_spearman;
  }
  return rows;
}

RunData PrepareRun(const ExperimentConfig& config, const RatingsTable& table,
                   int rater, uint64_t seed) {
  RunData data;
  data.split = MakeSplit(table.Items(config.task.category), seed);
  switch (config.setting) {
    case Setting::kAverage:
      data.train_targets = AverageTargets(table, config.task);
      data.truth = data.train_targets;
      break;
    case Setting::kWithinRater:
      data.train_targets = RaterTargets(table, config.task, rater);
      data.truth = data.train_targets;
      break;
    case Setting::kCrossRater:
      data.train_targets = CrossRaterTargets(table, config.task, rater);
      data.truth = RaterTargets(table, config.task, rater);
      break;
  }
  // Only training items' targets are visible to the trainer.
  Targets train_only;
  for (const auto& id : data.split.train_ids) {
    train_only[id] = data.train_targets.at(id);
  }
  data.train_targets = std::move(train_only);
  Targets test_only;
  for (const auto& id : data.split.test_ids) test_only[id] = data.truth.at(id);
  data.truth = std::move(test_only);
  return data;
}

metrics::MetricsReport TrainAndEvaluate(
    const ExperimentConfig& config, const RunData& data,
    const std::vector<FeatureVector>& features, uint64_t seed,
    RunTrace* trace) {
  std::unordered_map<std::string, const FeatureVector*> by_id;
  for (const auto& fv : features) by_id.emplace(fv.item_id, &fv);
  const auto& train_ids = data.split.train_ids;
  const auto& test_ids = data.split.test_ids;

  const std::vector<FeatureVector> train_raw = Select(by_id, train_ids);
  const StandardizationStats stats = FitStandardization(train_raw);
  const std::vector<FeatureVector> train = ApplyStandardization(train_raw, stats);
  const std::vector<FeatureVector> test =
      ApplyStandardization(Select(by_id, test_ids), stats);
  const Eigen::MatrixXd x_train = ToMatrix(train);
  const Eigen::MatrixXd x_test = ToMatrix(test);
  const Eigen::VectorXd y_train = Lookup(data.train_targets, train_ids);
  const Eigen::VectorXd y_test = Lookup(data.truth, test_ids);
  if (trace != nullptr) {
    trace->training_ids = train_ids;
    trace->standardization = stats;
  }

  Eigen::VectorXd predictions;
  const models::TrainingConfig training =
      MakeTrainingConfig(config, static_cast<int>(x_train.cols()));
  const uint64_t model_seed = MixSeed(seed, kModelStream);
  switch (config.model) {
    case ModelKind::kBaseline: {
      const models::OlsFit fit = models::FitOls(x_train, y_train);
      predictions = models::Predict(fit.model, x_test);
      if (trace != nullptr) trace->ols = fit.model;
      break;
    }
    case ModelKind::kDeep: {
      const models::TrainedEncoder trained =
          models::TrainDeepRegressor(x_train, y_train, training, model_seed);
      predictions = nn::Predict(trained.model, x_test);
      if (trace != nullptr) trace->encoder = trained.model;
      break;
    }
    case ModelKind::kComparative: {
      std::vector<models::RatedItem> rated;
      rated.reserve(train_ids.size());
      for (size_t k = 0; k < train_ids.size(); ++k) {
        rated.push_back({train_ids[k], y_train(k)});
      }
      const std::vector<models::PairwiseExample> pairs = models::GeneratePairs(
          rated, {config.n_pairs, MixSeed(seed, kPairStream), 20});
      if (pairs.empty()) {
        throw Error(ErrorCode::kInsufficientData,
                    "every sampled training pair was tied");
      }
      if (trace != nullptr) trace->pairs = pairs;
      const models::TrainedEncoder trained = models::TrainComparative(
          models::ItemFeatureTable(train), pairs, training, model_seed);
      const models::AffineCalibration calibration = models::CalibrateToRange(
          nn::Predict(trained.model, x_train), y_train.minCoeff(),
          y_train.maxCoeff());
      predictions = calibration.Apply(nn::Predict(trained.model, x_test));
      if (trace != nullptr) trace->encoder = trained.model;
      break;
    }
  }
  return metrics::Evaluate(AsSpan(y_test), AsSpan(predictions));
}

ResultsReport RunExperiment(const ExperimentConfig& config,
                            const RatingsTable& table,
                            const std::vector<FeatureVector>& features) {
  if (config.runs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "runs must be >= 1");
  }
  if (config.model == ModelKind::kComparative && config.n_pairs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_pairs must be >= 1");
  }
  std::vector<int> raters = {0};
  if (config.setting != Setting::kAverage) {
    raters = config.raters.empty() ? table.Raters() : config.raters;
    const std::vector<int> known = table.Raters();
    for (int r : raters) {
      if (!std::binary_search(known.begin(), known.end(), r)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "rater " + std::to_string(r) + " not in ratings table");
      }
    }
  }
  {
    std::unordered_map<std::string, int> have;
    for (const auto& fv : features) have.emplace(fv.item_id, 0);
    for (const auto& item : table.Items(config.task.category)) {
      if (!have.contains(item)) {
        throw Error(ErrorCode::kUnknownItem, "no features for item " + item);
      }
    }
  }

  struct Unit {
    int run;
    int rater;
  };
  std::vector<Unit> units;
  for (int run = 0; run < config.runs; ++run) {
    for (int rater : raters) units.push_back({run, rater});
  }
  std::vector<RunRecord> records(units.size());
  std::vector<std::exception_ptr> failures(units.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t u = next++; u < units.size(); u = next++) {
      const Unit& unit = units[u];
      const uint64_t seed = RunSeed(config.base_seed, unit.run);
      try {
        const RunData data = PrepareRun(config, table, unit.rater, seed);
        RunRecord& rec = records[u];
        rec.task = config.task.Name();
        rec.setting = std::string(SettingName(config.setting));
        rec.model = std::string(ModelKindName(config.model));
        rec.rater = unit.rater;
        rec.n_pairs =
            config.model == ModelKind::kComparative ? config.n_pairs : 0;
        rec.run = unit.run;
        rec.seed = seed;
        rec.metrics = TrainAndEvaluate(config, data, features, seed);
      } catch (...) {
        failures[u] = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(config.workers, 1,
                                 static_cast<int>(units.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (size_t u = 0; u < units.size(); ++u) {
    if (!failures[u]) continue;
    try {
      std::rethrow_exception(failures[u]);
    } catch (const Error& e) {
      throw Error(e.code(), "run " + std::to_string(units[u].run) +
                                " failed: " + e.message());
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kRunFailed, "run " +
                                             std::to_string(units[u].run) +
                                             " failed: " + e.what());
    }
  }
  ResultsReport report;
  report.runs = std::move(records);
  report.means = Aggregate(report.runs);
  return report;
}

}  // namespace artpref::harness
