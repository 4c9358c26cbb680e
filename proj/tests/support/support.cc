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

#include "support/support.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "artpref/random.h"
#include "oracles/oracles.h"

namespace artpref::testing {

TempDir::TempDir() {
  static uint64_t counter = 0;
  Rng rng(MixSeed(reinterpret_cast<uintptr_t>(this), counter++));
  path_ = std::filesystem::temp_directory_path() /
          ("artpref_test_" + std::to_string(rng() % 1000000000ULL));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

ImageRGB RandomImage(int width, int height, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> data(static_cast<size_t>(width) * height * 3);
  for (double& v : data) v = UniformUnit(rng);
  return ImageRGB(width, height, std::move(data));
}

LinearData MakeLinearData(int n, int d, double noise, uint64_t seed) {
  Rng rng(MixSeed(seed, 11));
  Eigen::VectorXd w(d);
  for (int k = 0; k < d; ++k) w(k) = StandardNormal(rng) / std::sqrt(d);
  return MakeLinearData(n, w, noise, seed);
}

LinearData MakeLinearData(int n, const Eigen::VectorXd& w, double noise,
                          uint64_t seed) {
  Rng rng(MixSeed(seed, 12));
  LinearData data;
  data.w = w;
  data.x.resize(n, w.size());
  data.y.resize(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < w.size(); ++c) data.x(r, c) = StandardNormal(rng);
    data.y(r) = data.x.row(r).dot(w) + noise * StandardNormal(rng);
  }
  return data;
}

std::vector<FeatureVector> ToFeatureVectors(const Eigen::MatrixXd& x,
                                            FeatureKind kind,
                                            const std::string& prefix) {
  std::vector<FeatureVector> out;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    char id[32];
    std::snprintf(id, sizeof(id), "%s%03d", prefix.c_str(), int(r));
    FeatureVector fv{id, kind, {}};
    for (Eigen::Index c = 0; c < x.cols(); ++c) fv.values.push_back(x(r, c));
    out.push_back(std::move(fv));
  }
  return out;
}

SyntheticStudy MakeSyntheticStudy(int items, int raters, int d,
                                  double rater_noise, uint64_t seed,
                                  FeatureKind kind) {
  const LinearData data = MakeLinearData(items, d, 0.0, seed);
  const double lo = data.y.minCoeff();
  const double hi = data.y.maxCoeff();
  Rng rng(MixSeed(seed, 13));
  std::vector<harness::RatingRow> rows;
  SyntheticStudy study;
  study.features = ToFeatureVectors(data.x, kind);
  for (int i = 0; i < items; ++i) {
    const double base = 1.0 + 8.0 * (data.y(i) - lo) / (hi - lo);
    for (int r = 1; r <= raters; ++r) {
      harness::RatingRow row;
      row.item_id = study.features[i].item_id;
      row.category = harness::Category::kAbstract;
      row.rater_id = r;
      row.beauty = std::clamp(base + rater_noise * StandardNormal(rng), 0.0,
                              10.0);
      row.liking = std::clamp(base + rater_noise * StandardNormal(rng), 0.0,
                              10.0);
      rows.push_back(row);
    }
  }
  study.table = harness::RatingsTable::FromRows(std::move(rows));
  return study;
}

survey::SurveyDataset MakeSurvey(const std::vector<int>& constant_direct,
                                 const std::vector<int>& constant_comparative,
                                 double direct_seconds,
                                 double comparative_seconds, uint64_t seed) {
  Rng rng(seed);
  survey::SurveyDataset dataset;
  // Exact-mean perturbations for a group of five events.
  auto times = [&](double mean) {
    std::vector<double> dev(5);
    double sum = 0;
    for (double& d : dev) {
      d = UniformReal(rng, -0.3, 0.3) * mean;
      sum += d;
    }
    std::vector<double> out;
    for (double d : dev) out.push_back((mean + d - sum / 5) * 1000.0);
    return out;
  };
  for (int p = 1; p <= 7; ++p) {
    survey::ParticipantResponses participant;
    participant.id = "P" + std::to_string(p);
    const bool flat_direct = std::count(constant_direct.begin(),
                                        constant_direct.end(), p) > 0;
    const bool flat_comparative =
        std::count(constant_comparative.begin(), constant_comparative.end(),
                   p) > 0;
    for (const auto& condition : harness::TaskSpec::All()) {
      const std::string cat(harness::CategoryName(condition.category));
      const auto direct_ms = times(direct_seconds);
      for (int k = 0; k < 5; ++k) {
        int rating = flat_direct ? 5 : 1 + int(UniformIndex(rng, 10));
        if (!flat_direct && k >= 3) rating = k == 3 ? 2 : 9;
        participant.responses.push_back(
            {survey::Method::kDirect, condition,
             {cat + "_d" + std::to_string(k)}, rating, direct_ms[k]});
      }
      const auto comparative_ms = times(comparative_seconds);
      for (int k = 0; k < 5; ++k) {
        survey::Choice choice =
            flat_comparative || UniformUnit(rng) < 0.5 ? survey::Choice::kFirst
                                                       : survey::Choice::kSecond;
        if (!flat_comparative && k >= 3) {
          choice = k == 3 ? survey::Choice::kFirst : survey::Choice::kSecond;
        }
        participant.responses.push_back(
            {survey::Method::kComparative, condition,
             {condition.Name() + "_c" + std::to_string(2 * k),
              condition.Name() + "_c" + std::to_string(2 * k + 1)},
             choice, comparative_ms[k]});
      }
    }
    dataset.participants.push_back(std::move(participant));
  }
  return dataset;
}

namespace {

oracle::Matrix ToRows(const Eigen::MatrixXd& m) {
  oracle::Matrix rows(m.rows(), std::vector<double>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  }
  return rows;
}

// Evaluated in long double so that central differences of an O(1) loss keep
// digits on parameters whose gradient is near zero.
long double ScalarObjective(const GradCheckCase& c,
                            const nn::EncoderModel& model) {
  std::vector<oracle::Matrix> masks;
  for (const auto& m : c.masks) masks.push_back(ToRows(m));
  const std::vector<long double> s =
      oracle::ForwardExtended(model, ToRows(c.batch), c.train, masks);
  long double loss = 0.0L;
  if (c.objective == Objective::kMae) {
    for (size_t i = 0; i < s.size(); ++i) {
      loss += std::fabs(s[i] - c.targets(i));
    }
    loss /= s.size();
  } else {
    const size_t p = s.size() / 2;
    for (size_t i = 0; i < p; ++i) {
      loss += std::max(0.0L, 1.0L - c.labels(i) * (s[i] - s[i + p]));
    }
    loss /= p;
  }
  long double penalty = 0.0L;
  for (const auto& layer : model.dense()) {
    for (Eigen::Index k = 0; k < layer.weights.size(); ++k) {
      const long double w = layer.weights.data()[k];
      penalty += w * w;
    }
  }
  return loss + c.l2 * penalty;
}

// Analytic score gradient of the objective at the library's forward scores.
Eigen::VectorXd ScoreGradient(const GradCheckCase& c,
                              const Eigen::VectorXd& s) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(s.size());
  if (c.objective == Objective::kMae) {
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      g(i) = (s(i) > c.targets(i) ? 1.0 : -1.0) / s.size();
    }
  } else {
    const Eigen::Index p = s.size() / 2;
    for (Eigen::Index i = 0; i < p; ++i) {
      if (c.labels(i) * (s(i) - s(i + p)) < 1.0) {
        g(i) = -c.labels(i) / double(p);
        g(i + p) = c.labels(i) / double(p);
      }
    }
  }
  return g;
}

}  // namespace

GradCheckCase MakeGradCheckCase(uint64_t seed, bool train,
                                Objective objective) {
  for (uint64_t attempt = 0;; ++attempt) {
    Rng rng(MixSeed(seed, 1000 + attempt));
    const int d = 2 + int(UniformIndex(rng, 15));
    const int h1 = 2 + int(UniformIndex(rng, 5));
    const int h2 = 2 + int(UniformIndex(rng, 3));
    auto config = nn::EncoderConfig::WithWidths(d, {h1, h2});
    GradCheckCase c{nn::EncoderModel::Create(config, rng()), {}, {}, train,
                    objective, {}, {}, 1e-5};
    if (c.model.ParameterCount() > 200) continue;
    for (auto& bn : c.model.batch_norm()) {
      for (Eigen::Index k = 0; k < bn.gamma.size(); ++k) {
        bn.gamma(k) = UniformReal(rng, 0.5, 1.5);
        bn.beta(k) = UniformReal(rng, -0.5, 0.5);
        bn.running_mean(k) = UniformReal(rng, 0.0, 0.5);
        bn.running_var(k) = UniformReal(rng, 0.5, 1.5);
      }
    }
    const int rows = 6;
    c.batch.resize(rows, d);
    for (Eigen::Index k = 0; k < c.batch.size(); ++k) {
      c.batch.data()[k] = StandardNormal(rng);
    }
    for (size_t k = 0; k < c.model.num_hidden(); ++k) {
      const double rate = c.model.dropout()[k].rate;
      const int width = config.hidden[k];
      if (rate <= 0.0) {
        c.masks.emplace_back();
        continue;
      }
      Eigen::MatrixXd mask(rows, width);
      for (Eigen::Index e = 0; e < mask.size(); ++e) {
        mask.data()[e] = UniformUnit(rng) < rate ? 0.0 : 1.0 / (1.0 - rate);
      }
      c.masks.push_back(std::move(mask));
    }
    nn::ForwardOptions options;
    options.mode = train ? nn::Mode::kTrain : nn::Mode::kEval;
    options.dropout_masks = &c.masks;
    const nn::ForwardResult fwd = nn::Forward(c.model, c.batch, options);
    bool near_kink = false;
    for (const auto& record : fwd.cache.hidden) {
      if ((record.pre_activation.array().abs() < 1e-3).any()) near_kink = true;
    }
    if (near_kink) continue;
    if (objective == Objective::kMae) {
      c.targets.resize(rows);
      for (int i = 0; i < rows; ++i) {
        const double offset = UniformReal(rng, 0.1, 1.0);
        c.targets(i) = fwd.scores(i) + (UniformUnit(rng) < 0.5 ? offset : -offset);
      }
    } else {
      const int p = rows / 2;
      c.labels.resize(p);
      for (int i = 0; i < p; ++i) {
        c.labels(i) = UniformUnit(rng) < 0.5 ? 1 : -1;
        const double diff = fwd.scores(i) - fwd.scores(i + p);
        if (std::fabs(1.0 - c.labels(i) * diff) < 1e-3) c.labels(i) = -c.labels(i);
        if (std::fabs(1.0 - c.labels(i) * diff) < 1e-3) near_kink = true;
      }
      if (near_kink) continue;
    }
    return c;
  }
}

double MaxGradientRelativeError(const GradCheckCase& c, double h) {
  nn::ForwardOptions options;
  options.mode = c.train ? nn::Mode::kTrain : nn::Mode::kEval;
  options.dropout_masks = &c.masks;
  const nn::ForwardResult fwd = nn::Forward(c.model, c.batch, options);
  const nn::Gradients grads =
      nn::Backward(c.model, fwd.cache, ScoreGradient(c, fwd.scores), c.l2);

  nn::EncoderModel probe = c.model;
  double worst = 0.0;
  auto check = [&](double& param, double analytic) {
    const double saved = param;
    param = saved + h;
    const long double step_up = param;
    const long double up = ScalarObjective(c, probe);
    param = saved - h;
    const long double step = step_up - param;
    const long double down = ScalarObjective(c, probe);
    param = saved;
    const double numeric = double((up - down) / step);
    const double scale =
        std::max({std::fabs(analytic), std::fabs(numeric), 1e-6});
    worst = std::max(worst, std::fabs(analytic - numeric) / scale);
  };
  for (size_t k = 0; k < probe.dense().size(); ++k) {
    auto& layer = probe.dense()[k];
    for (Eigen::Index i = 0; i < layer.weights.rows(); ++i) {
      for (Eigen::Index j = 0; j < layer.weights.cols(); ++j) {
        check(layer.weights(i, j), grads.dense[k].weights(i, j));
      }
    }
    for (Eigen::Index i = 0; i < layer.biases.size(); ++i) {
      check(layer.biases(i), grads.dense[k].biases(i));
    }
  }
  for (size_t k = 0; k < probe.batch_norm().size(); ++k) {
    auto& bn = probe.batch_norm()[k];
    for (Eigen::Index i = 0; i < bn.gamma.size(); ++i) {
      check(bn.gamma(i), grads.batch_norm[k].gamma(i));
      check(bn.beta(i), grads.batch_norm[k].beta(i));
    }
  }
  return worst;
}

}  // namespace artpref::testing
