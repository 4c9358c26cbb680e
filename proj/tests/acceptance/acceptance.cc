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

// Acceptance run: one PASS/FAIL line per primary criterion. The first
// argument is the path of the artpref CLI. The dataset check runs only when
// ARTPREF_RATINGS and ARTPREF_DEEP_FEATURES name the real ratings table and
// its 2048-d embedding file.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "artpref/features.h"
#include "artpref/harness/experiment.h"
#include "artpref/harness/ratings.h"
#include "artpref/harness/split.h"
#include "artpref/metrics.h"
#include "artpref/models/ols.h"
#include "artpref/models/pairs.h"
#include "artpref/models/trainers.h"
#include "artpref/random.h"
#include "artpref/survey/analysis.h"
#include "oracles/oracles.h"
#include "support/support.h"

namespace artpref {
namespace {

using Clock = std::chrono::steady_clock;
using Vec = std::vector<double>;

struct Outcome {
  enum Status { kPass, kFail, kSkip } status = kFail;
  std::string detail;
};

Outcome Check(bool ok, std::string detail) {
  return {ok ? Outcome::kPass : Outcome::kFail, std::move(detail)};
}

std::string Fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), format, args...);
  return buffer;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Vec Std(const Eigen::VectorXd& v) { return Vec(v.begin(), v.end()); }

Outcome GradientCorrectness() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    for (auto objective : {testing::Objective::kMae, testing::Objective::kHinge}) {
      const auto c = testing::MakeGradCheckCase(seed, false, objective);
      worst = std::max(worst, testing::MaxGradientRelativeError(c));
    }
  }
  const double secs = Seconds(start);
  return Check(worst < 1e-4 && secs < 30,
               Fmt("20 encoders x {mae, hinge}, max rel error %.2e, %.1f s", worst, secs));
}

Outcome OlsEquivalence() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const auto data = testing::MakeLinearData(200, 11, 0.5, 1000 + seed);
    const auto fit = models::FitOls(data.x, data.y);
    oracle::Matrix rows(200, Vec(11));
    for (int r = 0; r < 200; ++r) {
      for (int c = 0; c < 11; ++c) rows[r][c] = data.x(r, c);
    }
    const Vec want = oracle::NormalEquations(rows, Std(data.y));
    double diff = std::fabs(fit.model.bias - want[11]);
    double scale = std::fabs(want[11]);
    for (int k = 0; k < 11; ++k) {
      diff = std::max(diff, std::fabs(fit.model.weights(k) - want[k]));
      scale = std::max(scale, std::fabs(want[k]));
    }
    worst = std::max(worst, diff / scale);
  }
  const double secs = Seconds(start);
  return Check(worst < 1e-8 && secs < 10,
               Fmt("50 problems 200x11, max relative deviation %.2e, %.2f s", worst, secs));
}

Outcome MetricEquivalence() {
  Rng rng(4242);
  double worst = 0.0;
  bool undefined_agree = true;
  auto track = [&](std::optional<double> a, std::optional<double> b) {
    if (a.has_value() != b.has_value()) {
      undefined_agree = false;
    } else if (a) {
      worst = std::max(worst, std::fabs(*a - *b));
    }
  };
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(UniformIndex(rng, 150));
    Vec y(n), p(n);
    for (int k = 0; k < n; ++k) {
      y[k] = StandardNormal(rng);
      p[k] = 0.5 * y[k] + StandardNormal(rng);
    }
    if (trial % 3 == 0) {
      for (double& v : y) v = std::round(v * 2);
    }
    track(metrics::MeanAbsoluteError(y, p), oracle::Mae(y, p));
    if (*std::max_element(y.begin(), y.end()) != *std::min_element(y.begin(), y.end())) {
      track(metrics::RSquared(y, p), oracle::RSquared(y, p));
    }
    track(metrics::Pearson(y, p), oracle::Pearson(y, p));
    track(metrics::Spearman(y, p), oracle::Spearman(y, p));
    std::vector<int> a(n), b(n);
    for (int k = 0; k < n; ++k) {
      a[k] = UniformUnit(rng) < 0.55 ? 1 : -1;
      b[k] = UniformUnit(rng) < (a[k] > 0 ? 0.8 : 0.3) ? 1 : -1;
    }
    track(metrics::PairwiseAccuracy(a, b), oracle::Accuracy(a, b));
    track(metrics::CohenKappa(a, b), oracle::Kappa(a, b));
  }
  double closed_form = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(UniformIndex(rng, 100));
    Vec y(n), p(n);
    for (int k = 0; k < n; ++k) {
      y[k] = StandardNormal(rng);
      p[k] = StandardNormal(rng);
    }
    closed_form = std::max(
        closed_form, std::fabs(*metrics::Spearman(y, p) - oracle::SpearmanClosedForm(y, p)));
  }
  return Check(worst < 1e-10 && undefined_agree && closed_form < 1e-12,
               Fmt("100 instances x 6 metrics, max deviation %.1e; tie-free Spearman vs "
                   "closed form %.1e",
                   worst, closed_form));
}

// Synthetic linear data shared by the regression and comparative checks:
// 200 training samples, 1000 held-out samples, noise 0.1.
struct SyntheticRun {
  testing::LinearData data;
  double regressor_r2 = 0.0;
  double regressor_spearman = 0.0;
  double seconds = 0.0;
};

constexpr int kSyntheticSeeds = 10;

nn::EncoderConfig SyntheticEncoder() {
  return nn::EncoderConfig::WithWidths(16, {256, 128, 64});
}

std::vector<SyntheticRun> RunRegressors() {
  std::vector<SyntheticRun> runs;
  for (uint64_t seed = 0; seed < kSyntheticSeeds; ++seed) {
    const auto start = Clock::now();
    SyntheticRun run{testing::MakeLinearData(1200, 16, 0.1, seed)};
    const auto trained = models::TrainDeepRegressor(
        run.data.x.topRows(200), run.data.y.head(200),
        models::TrainingConfig::Regression(SyntheticEncoder()), MixSeed(seed, 3));
    const Vec truth = Std(run.data.y.tail(1000));
    const Vec pred = Std(nn::Predict(trained.model, run.data.x.bottomRows(1000)));
    run.regressor_r2 = metrics::RSquared(truth, pred);
    run.regressor_spearman = *metrics::Spearman(truth, pred);
    run.seconds = Seconds(start);
    runs.push_back(std::move(run));
  }
  return runs;
}

Outcome SyntheticRegression(const std::vector<SyntheticRun>& runs) {
  double sum = 0.0, lowest = 1.0, slowest = 0.0;
  for (const auto& r : runs) {
    sum += r.regressor_r2;
    lowest = std::min(lowest, r.regressor_r2);
    slowest = std::max(slowest, r.seconds);
  }
  const double mean = sum / static_cast<double>(runs.size());
  return Check(mean >= 0.9 && slowest < 120,
               Fmt("mean held-out R2 %.4f over %zu seeds (lowest %.4f), 200 epochs, "
                   "slowest run %.1f s",
                   mean, runs.size(), lowest, slowest));
}

Outcome ComparativeGap(const std::vector<SyntheticRun>& runs) {
  double sum1 = 0.0, sum5 = 0.0, worst_gap = 0.0;
  for (size_t seed = 0; seed < runs.size(); ++seed) {
    const auto& data = runs[seed].data;
    const auto features =
        testing::ToFeatureVectors(data.x.topRows(200), FeatureKind::kDeep2048);
    const models::ItemFeatureTable table(features);
    std::vector<models::RatedItem> items;
    for (int i = 0; i < 200; ++i) items.push_back({features[i].item_id, data.y(i)});
    const Vec truth = Std(data.y.tail(1000));
    for (int n : {1, 5}) {
      const auto pairs = models::GeneratePairs(items, {n, MixSeed(seed, 4), 20});
      const auto trained = models::TrainComparative(
          table, pairs, models::TrainingConfig::Comparative(SyntheticEncoder()),
          MixSeed(seed, 3));
      const double rho = *metrics::Spearman(
          truth, Std(nn::Predict(trained.model, data.x.bottomRows(1000))));
      if (n == 1) {
        sum1 += rho;
      } else {
        sum5 += rho;
        worst_gap = std::max(worst_gap, runs[seed].regressor_spearman - rho);
      }
    }
  }
  const double k = static_cast<double>(runs.size());
  return Check(worst_gap <= 0.10 && sum5 > sum1,
               Fmt("largest regressor-minus-comparative Spearman gap at N=5 %.4f; "
                   "mean Spearman N=1 %.4f, N=5 %.4f over %zu seeds",
                   worst_gap, sum1 / k, sum5 / k, runs.size()));
}

Outcome PairContract() {
  std::vector<models::RatedItem> items;
  for (int k = 0; k < 100; ++k) {
    items.push_back({"it" + std::to_string(k), std::fmod(k * 0.37, 10.0)});
  }
  const auto pairs = models::GeneratePairs(items, {10, 7, 20});
  std::map<std::string, double> rating;
  for (const auto& it : items) rating[it.item_id] = it.rating;
  int ties = 0, agree = 0;
  for (const auto& p : pairs) {
    ties += rating[p.i] == rating[p.j] ? 1 : 0;
    agree += p.label == (rating[p.i] > rating[p.j] ? 1 : -1) ? 1 : 0;
  }
  std::vector<models::RatedItem> equal;
  for (int k = 0; k < 100; ++k) equal.push_back({"e" + std::to_string(k), 4.0});
  const size_t tied_pairs = models::GeneratePairs(equal, {10, 7, 20}).size();
  return Check(pairs.size() == 1000 && ties == 0 &&
                   agree == static_cast<int>(pairs.size()) && tied_pairs == 0,
               Fmt("%zu pairs, %d tied, %d/%zu labels agree; all-equal ratings give %zu pairs",
                   pairs.size(), ties, agree, pairs.size(), tied_pairs));
}

Outcome SettingAlgebra() {
  double worst = 0.0;
  const harness::TaskSpec task{harness::Category::kAbstract, harness::Dimension::kLiking};
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const auto study = testing::MakeSyntheticStudy(60, 3 + static_cast<int>(seed % 5), 3,
                                                   2.0, seed);
    const auto& table = study.table;
    for (int held : table.Raters()) {
      const auto targets = harness::CrossRaterTargets(table, task, held);
      for (const auto& item : table.Items(harness::Category::kAbstract)) {
        std::map<int, double> by_rater;
        for (int r : table.Raters()) by_rater[r] = *table.Rating(item, r, task.dimension);
        worst = std::max(worst, std::fabs(targets.at(item) -
                                          oracle::LeaveOneOutMean(by_rater, held)));
      }
    }
  }
  std::vector<std::string> ids;
  for (int k = 0; k < 239; ++k) ids.push_back("s" + std::to_string(k));
  const auto split = harness::MakeSplit(ids, 3);
  return Check(worst <= 1e-12 && split.train_ids.size() == 140 && split.test_ids.size() == 99,
               Fmt("leave-one-out deviation %.1e; 239 items split %zu/%zu", worst,
                   split.train_ids.size(), split.test_ids.size()));
}

int System(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome CliDeterminism(const std::string& cli) {
  testing::TempDir dir;
  const auto hand = testing::MakeSyntheticStudy(45, 3, 11, 0.7, 8, FeatureKind::kHandcrafted11);
  const auto deep = testing::MakeSyntheticStudy(45, 3, 2048, 0.7, 8);
  hand.table.Save(dir / "ratings.csv");
  WriteFeatureFile(hand.features, dir / "hand.csv");
  WriteFeatureFile(deep.features, dir / "deep.csv");
  const std::vector<std::string> configs = {
      "features = hand.csv\nmodel = baseline\nsetting = cross_rater\n",
      "features = deep.csv\nmodel = deep\nsetting = average\nhidden = 16,8,4\nepochs = 5\n",
      "features = deep.csv\nmodel = comparative\nsetting = within_rater\nraters = 1,3\n"
      "n_pairs = 3\nhidden = 16,8,4\nepochs = 5\n"};
  int identical = 0;
  for (size_t k = 0; k < configs.size(); ++k) {
    std::string bytes[2];
    for (int rep = 0; rep < 2; ++rep) {
      const std::string name = "c" + std::to_string(k) + "_" + std::to_string(rep);
      testing::WriteFile(dir / (name + ".cfg"),
                         "ratings = ratings.csv\ntask = abstract_beauty\nruns = 3\n"
                         "base_seed = 17\nout = " + name + ".csv\n" + configs[k]);
      const std::string workers = rep == 0 ? "1" : "3";
      if (System(cli + " experiment --workers " + workers + " --config " +
                 (dir / (name + ".cfg")).string()) != 0) {
        return Check(false, "experiment invocation failed for config " + std::to_string(k));
      }
      bytes[rep] = testing::ReadFile(dir / (name + ".csv"));
    }
    identical += !bytes[0].empty() && bytes[0] == bytes[1] ? 1 : 0;
  }
  return Check(identical == static_cast<int>(configs.size()),
               Fmt("%d/%zu experiment configs (baseline, deep, comparative) byte-identical "
                   "on repeat",
                   identical, configs.size()));
}

Outcome DatasetReference() {
  const char* ratings_path = std::getenv("ARTPREF_RATINGS");
  const char* features_path = std::getenv("ARTPREF_DEEP_FEATURES");
  if (ratings_path == nullptr || features_path == nullptr) {
    return {Outcome::kSkip,
            "set ARTPREF_RATINGS and ARTPREF_DEEP_FEATURES to check the deep regressor "
            "against reference values"};
  }
  struct Reference {
    const char* task;
    double r2, pearson, spearman;
  };
  const Reference refs[] = {{"abstract_beauty", 0.385, 0.649, 0.594},
                            {"abstract_liking", 0.277, 0.563, 0.502},
                            {"representational_beauty", 0.344, 0.631, 0.617},
                            {"representational_liking", 0.429, 0.666, 0.658}};
  const auto table = harness::RatingsTable::Load(ratings_path);
  const auto features = LoadFeatureFile(features_path, FeatureKind::kDeep2048);
  std::string detail;
  bool ok = true;
  for (const auto& ref : refs) {
    harness::ExperimentConfig config;
    config.task = harness::TaskSpec::Parse(ref.task);
    config.setting = harness::Setting::kAverage;
    config.model = harness::ModelKind::kDeep;
    config.runs = 10;
    const auto report = harness::RunExperiment(config, table, features);
    const auto& m = report.means.at(0);
    const bool within = m.r2 && m.pearson && m.spearman &&
                        std::fabs(*m.r2 - ref.r2) <= 0.10 &&
                        std::fabs(*m.pearson - ref.pearson) <= 0.10 &&
                        std::fabs(*m.spearman - ref.spearman) <= 0.10;
    ok = ok && within;
    detail += Fmt("%s R2 %.3f r %.3f rho %.3f%s; ", ref.task, m.r2.value_or(NAN),
                  m.pearson.value_or(NAN), m.spearman.value_or(NAN), within ? "" : " (off)");
  }
  return Check(ok, detail);
}

Outcome SurveyPipeline() {
  const auto dataset = testing::MakeSurvey({2, 5}, {5}, 27.28, 10.71, 99);
  const auto filter = survey::VarianceFilter(dataset);
  const auto times = survey::ComputeTimeStats(dataset, filter.retained_joint);
  const std::vector<std::string> retained(filter.retained_joint.begin(),
                                          filter.retained_joint.end());
  size_t matrices = 0;
  for (const auto& condition : harness::TaskSpec::All()) {
    for (auto method : {survey::Method::kDirect, survey::Method::kComparative}) {
      matrices += survey::ComputeAgreement(dataset, condition, method, retained).raters.size() ==
                          retained.size()
                      ? 1
                      : 0;
    }
  }
  const double percent = 100.0 * times.reduction;
  return Check(filter.removed_direct == 2 && filter.removed_comparative == 1 &&
                   filter.retained_joint.size() == 5 && std::round(percent * 10) == 607 &&
                   matrices == 8,
               Fmt("removed direct %d, comparative %d, joint retained %zu; direct %.2f s vs "
                   "comparative %.2f s, reduction %.1f%%",
                   filter.removed_direct, filter.removed_comparative,
                   filter.retained_joint.size(), times.direct_mean, times.comparative_mean,
                   percent));
}

int Main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path to artpref CLI>\n");
    return 2;
  }
  const std::string cli = argv[1];
  int failures = 0;
  auto report = [&](const char* name, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {Outcome::kFail, std::string("threw ") + e.what()};
    }
    const char* tag = o.status == Outcome::kPass   ? "PASS"
                      : o.status == Outcome::kSkip ? "SKIP"
                                                   : "FAIL";
    failures += o.status == Outcome::kFail ? 1 : 0;
    std::printf("%s %s: %s\n", tag, name, o.detail.c_str());
    std::fflush(stdout);
  };
  report("gradient correctness", GradientCorrectness);
  report("OLS oracle equivalence", OlsEquivalence);
  report("metric oracle equivalence", MetricEquivalence);
  std::vector<SyntheticRun> runs;
  try {
    runs = RunRegressors();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "regressor runs failed: %s\n", e.what());
  }
  report("synthetic regression recovery", [&] { return SyntheticRegression(runs); });
  report("comparative vs regression gap", [&] { return ComparativeGap(runs); });
  report("pair generation contract", PairContract);
  report("setting algebra", SettingAlgebra);
  report("experiment determinism", [&] { return CliDeterminism(cli); });
  report("dataset reference values", DatasetReference);
  report("survey analysis pipeline", SurveyPipeline);
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace artpref

int main(int argc, char** argv) { return artpref::Main(argc, argv); }
