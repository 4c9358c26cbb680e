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

// Command-line front end: feature extraction, training, experiments, result
// reports and the survey service.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "artpref/error.h"
#include "artpref/features.h"
#include "artpref/harness/config.h"
#include "artpref/harness/experiment.h"
#include "artpref/harness/ratings.h"
#include "artpref/harness/results.h"
#include "artpref/image.h"
#include "artpref/models/ols.h"
#include "artpref/models/pairs.h"
#include "artpref/nn/checkpoint.h"
#include "artpref/survey/analysis.h"
#include "artpref/survey/dataset.h"
#include "artpref/survey/http_server.h"
#include "artpref/survey/service.h"
#include "nlohmann/json.hpp"

namespace fs = std::filesystem;

namespace artpref {
namespace {

using nlohmann::json;

constexpr int kValidationExit = 1;
constexpr int kRuntimeExit = 2;

bool IsImageFile(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

// --- extract-features -----------------------------------------------------

struct ExtractOptions {
  std::string image_dir;
  std::string out;
  int size = 224;
  bool no_resize = false;
};

int RunExtract(const ExtractOptions& opt) {
  if (!fs::is_directory(opt.image_dir)) {
    throw Error(ErrorCode::kIoFailure, "no image directory " + opt.image_dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(opt.image_dir)) {
    if (entry.is_regular_file() && IsImageFile(entry.path())) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.stem().string() < b.stem().string() ||
           (a.stem() == b.stem() && a < b);
  });
  std::vector<FeatureVector> features;
  for (const auto& file : files) {
    ImageRGB image = LoadImage(file);
    if (!opt.no_resize) image = Resize(image, opt.size, opt.size);
    features.push_back(HandcraftedFeatures(image, file.stem().string()));
  }
  WriteFeatureFile(features, opt.out);
  std::cerr << "wrote " << features.size() << " feature rows to " << opt.out
            << "\n";
  return 0;
}

// --- train ------------------------------------------------------------------

struct TrainOptions {
  std::string ratings;
  std::string features;
  std::string model;
  std::string task;
  std::string setting = "average";
  int rater = 0;
  int n_pairs = 5;
  uint64_t seed = 0;
  std::vector<int> hidden;
  std::optional<int> epochs;
  int batch_size = 10;
  std::string pairs_out;
  std::string save;
};

int RunTrain(const TrainOptions& opt) {
  harness::ExperimentConfig config;
  config.task = harness::TaskSpec::Parse(opt.task);
  config.setting = harness::ParseSetting(opt.setting);
  config.model = harness::ParseModelKind(opt.model);
  config.n_pairs = opt.n_pairs;
  config.hidden = opt.hidden;
  config.epochs = opt.epochs;
  config.batch_size = opt.batch_size;
  if (config.setting != harness::Setting::kAverage && opt.rater < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "--rater is required for within_rater and cross_rater");
  }
  const int rater = config.setting == harness::Setting::kAverage ? 0 : opt.rater;
  const auto table = harness::RatingsTable::Load(opt.ratings);
  const auto features =
      LoadFeatureFile(opt.features, harness::ExpectedFeatureKind(config.model));
  const harness::RunData data =
      harness::PrepareRun(config, table, rater, opt.seed);
  harness::RunTrace trace;
  harness::RunRecord record;
  record.task = config.task.Name();
  record.setting = std::string(harness::SettingName(config.setting));
  record.model = std::string(harness::ModelKindName(config.model));
  record.rater = rater;
  record.n_pairs =
      config.model == harness::ModelKind::kComparative ? config.n_pairs : 0;
  record.seed = opt.seed;
  record.metrics =
      harness::TrainAndEvaluate(config, data, features, opt.seed, &trace);
  if (!opt.pairs_out.empty()) {
    models::WritePairsFile(trace.pairs, opt.pairs_out);
  }
  if (!opt.save.empty()) {
    if (trace.ols) {
      models::SaveOls(*trace.ols, trace.standardization, opt.save);
    } else {
      nn::SaveEncoder(*trace.encoder, trace.standardization, opt.save);
    }
  }
  std::cout << harness::kResultsHeader << "\n"
            << harness::FormatResultRow(record) << "\n";
  return 0;
}

// --- experiment / sweep-pairs / report -------------------------------------

struct ExperimentOptions {
  std::string config;
  std::optional<int> workers;
  int n_min = 1;
  int n_max = 10;
};

void Publish(const harness::ExperimentFile& file,
             const std::vector<harness::RunRecord>& records) {
  if (!file.out.empty()) {
    harness::MergeResults(file.out, records);
    std::cerr << "merged " << records.size() << " rows into "
              << file.out.string() << "\n";
  } else {
    std::cout << harness::kResultsHeader << "\n";
    for (const auto& r : records) {
      std::cout << harness::FormatResultRow(r) << "\n";
    }
  }
  harness::WriteSummary(harness::Aggregate(records), std::cerr);
}

int RunExperimentCommand(const ExperimentOptions& opt, bool sweep) {
  harness::ExperimentFile file = harness::LoadExperimentFile(opt.config);
  if (opt.workers) file.config.workers = *opt.workers;
  const auto table = harness::RatingsTable::Load(file.ratings);
  if (sweep) file.config.model = harness::ModelKind::kComparative;
  const auto features = LoadFeatureFile(
      file.features, harness::ExpectedFeatureKind(file.config.model));
  std::vector<harness::RunRecord> records;
  if (!sweep) {
    records = harness::RunExperiment(file.config, table, features).runs;
  } else {
    if (opt.n_min < 1 || opt.n_max < opt.n_min) {
      throw Error(ErrorCode::kInvalidArgument,
                  "need 1 <= --n-min <= --n-max");
    }
    for (int n = opt.n_min; n <= opt.n_max; ++n) {
      file.config.n_pairs = n;
      auto runs = harness::RunExperiment(file.config, table, features).runs;
      records.insert(records.end(), runs.begin(), runs.end());
    }
  }
  Publish(file, records);
  return 0;
}

int RunReport(const std::string& in, const std::string& out) {
  const auto rows = harness::Aggregate(harness::ReadResults(in));
  if (out.empty()) {
    harness::WriteSummary(rows, std::cout);
    return 0;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIoFailure, "cannot write " + out);
  harness::WriteSummary(rows, file);
  return 0;
}

// --- serve / survey-analyze ----------------------------------------------------

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string stimuli;
  std::string log = "survey_events.jsonl";
  uint64_t seed = 0;
  int direct = 5;
  int comparative = 5;
};

int RunServe(const ServeOptions& opt) {
  survey::ServiceConfig config;
  config.pool = survey::LoadStimulusDirectory(opt.stimuli);
  config.seed = opt.seed;
  config.log_path = opt.log;
  config.plan.entries.clear();
  for (const auto& condition : harness::TaskSpec::All()) {
    config.plan.entries.push_back({condition, opt.direct, opt.comparative});
  }
  survey::SurveyService service(std::move(config));
  survey::SurveyHttpServer server(service, opt.stimuli);
  const int port = server.Bind(opt.host, opt.port);
  std::cerr << "survey service on http://" << opt.host << ":" << port << "\n";
  server.Listen();
  return 0;
}

json OptionalJson(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json MatrixJson(const std::vector<std::vector<std::optional<double>>>& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& v : row) r.push_back(OptionalJson(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

int RunSurveyAnalyze(const std::string& in, const std::string& reference,
                     const std::string& out) {
  const survey::SurveyDataset dataset = survey::ImportSurvey(in);
  std::optional<harness::RatingsTable> table;
  if (!reference.empty()) table = harness::RatingsTable::Load(reference);

  const survey::VarianceFilterResult filter = survey::VarianceFilter(dataset);
  json report;
  report["participants"] = dataset.participants.size();
  report["variance_filter"] = {
      {"removed_direct", filter.removed_direct},
      {"removed_comparative", filter.removed_comparative},
      {"retained", filter.retained_joint}};

  const std::vector<std::string> retained(filter.retained_joint.begin(),
                                          filter.retained_joint.end());
  json agreement = json::array();
  if (retained.size() >= 2) {
    for (const auto& condition : harness::TaskSpec::All()) {
      std::optional<std::map<std::string, double>> gt;
      if (table) gt = harness::AverageTargets(*table, condition);
      for (auto method : {survey::Method::kDirect, survey::Method::kComparative}) {
        const auto m =
            survey::ComputeAgreement(dataset, condition, method, retained, gt);
        json averages = json::array();
        for (const auto& v : m.row_average) averages.push_back(OptionalJson(v));
        agreement.push_back({{"condition", condition.Name()},
                             {"method", survey::MethodName(method)},
                             {"raters", m.raters},
                             {"accuracy", MatrixJson(m.accuracy)},
                             {"kappa", MatrixJson(m.kappa)},
                             {"row_average", std::move(averages)}});
      }
    }
  }
  report["agreement"] = std::move(agreement);

  const survey::TimeStats times =
      survey::ComputeTimeStats(dataset, filter.retained_joint);
  json groups = json::array();
  for (const auto& g : times.groups) {
    groups.push_back({{"condition", g.condition.Name()},
                      {"method", survey::MethodName(g.method)},
                      {"mean_seconds", g.mean_seconds},
                      {"n", g.n}});
  }
  report["time_stats"] = {{"groups", std::move(groups)},
                          {"direct_mean_seconds", times.direct_mean},
                          {"comparative_mean_seconds", times.comparative_mean},
                          {"reduction", times.reduction}};
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::kIoFailure, "cannot write " + out);
    file << text;
  }
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Aesthetic preference modeling toolkit"};
  app.require_subcommand(1);

  ExtractOptions extract;
  auto* extract_cmd = app.add_subcommand(
      "extract-features", "Compute the 11 hand-crafted features per image");
  extract_cmd->add_option("image_dir", extract.image_dir,
                          "Directory of PNG/JPEG images")->required();
  extract_cmd->add_option("--out", extract.out, "Feature CSV")->required();
  extract_cmd->add_option("--size", extract.size, "Resize edge length")
      ->check(CLI::PositiveNumber);
  extract_cmd->add_flag("--no-resize", extract.no_resize,
                        "Use images at native size");

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train and evaluate one run");
  train_cmd->add_option("--ratings", train.ratings, "Ratings CSV")->required();
  train_cmd->add_option("--features", train.features,
                        "Feature CSV")->required();
  train_cmd->add_option("--model", train.model, "baseline, deep or comparative")
      ->required()
      ->check(CLI::IsMember({"baseline", "deep", "comparative"}));
  train_cmd->add_option("--task", train.task, "Task name")->required();
  train_cmd->add_option("--setting", train.setting,
                          "average, within_rater or cross_rater");
  train_cmd->add_option("--rater", train.rater,
                        "Rater id for per-rater settings");
  train_cmd->add_option("--n-pairs", train.n_pairs,
                        "Pairs per item")->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", train.seed, "Run seed");
  train_cmd->add_option("--hidden", train.hidden,
                        "Hidden widths, comma separated")->delimiter(',');
  train_cmd->add_option("--epochs", train.epochs, "Training epochs");
  train_cmd->add_option("--batch-size", train.batch_size, "Minibatch size");
  train_cmd->add_option("--pairs-out", train.pairs_out,
                        "Write the generated training pairs as JSON lines");
  train_cmd->add_option("--save", train.save, "Write the fitted model");

  ExperimentOptions experiment;
  auto* experiment_cmd =
      app.add_subcommand("experiment", "Run a multi-seed experiment");
  experiment_cmd->add_option("--config", experiment.config,
                             "Experiment config file")->required();
  experiment_cmd->add_option("--workers", experiment.workers, "Parallel runs");

  ExperimentOptions sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep-pairs", "Run the comparative model for each N in a range");
  sweep_cmd->add_option("--config", sweep.config,
                        "Experiment config file")->required();
  sweep_cmd->add_option("--n-min", sweep.n_min, "Smallest N");
  sweep_cmd->add_option("--n-max", sweep.n_max, "Largest N");
  sweep_cmd->add_option("--workers", sweep.workers, "Parallel runs");

  std::string report_in, report_out;
  auto* report_cmd =
      app.add_subcommand("report", "Average a Results CSV over runs");
  report_cmd->add_option("--in", report_in, "Results CSV")->required();
  report_cmd->add_option("--out", report_out, "Summary CSV, stdout if omitted");

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the survey HTTP service");
  serve_cmd->add_option("--host", serve.host, "Bind address");
  serve_cmd->add_option("--port", serve.port, "Listen port");
  serve_cmd->add_option("--stimuli", serve.stimuli,
                        "Stimulus image directory")->required();
  serve_cmd->add_option("--log", serve.log, "Append-only event log");
  serve_cmd->add_option("--seed", serve.seed, "Queue seed");
  serve_cmd->add_option("--direct", serve.direct, "Direct tasks per condition");
  serve_cmd->add_option("--comparative", serve.comparative,
                        "Comparative tasks per condition");

  std::string survey_in, survey_reference, survey_out;
  auto* analyze_cmd = app.add_subcommand(
      "survey-analyze", "Variance filter, agreement and timing of a survey");
  analyze_cmd->add_option("--in", survey_in, "Survey JSON")->required();
  analyze_cmd->add_option("--reference", survey_reference,
                          "Ratings CSV whose averages form the GT labels");
  analyze_cmd->add_option("--out", survey_out,
                          "Analysis JSON, stdout if omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidationExit;
  }

  try {
    if (*extract_cmd) return RunExtract(extract);
    if (*train_cmd) return RunTrain(train);
    if (*experiment_cmd) return RunExperimentCommand(experiment, false);
    if (*sweep_cmd) return RunExperimentCommand(sweep, true);
    if (*report_cmd) return RunReport(report_in, report_out);
    if (*serve_cmd) return RunServe(serve);
    if (*analyze_cmd) {
      return RunSurveyAnalyze(survey_in, survey_reference, survey_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_validation() ? kValidationExit : kRuntimeExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeExit;
  }
  return kValidationExit;
}

}  // namespace
}  // namespace artpref

int main(int argc, char** argv) { return artpref::Main(argc, argv); }
