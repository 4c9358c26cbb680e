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

// Test fixtures: synthetic data generators, temporary directories and the
// finite-difference gradient check shared by unit and acceptance tests.

#ifndef ARTPREF_TESTS_SUPPORT_SUPPORT_H_
#define ARTPREF_TESTS_SUPPORT_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "artpref/features.h"
#include "artpref/harness/ratings.h"
#include "artpref/image.h"
#include "artpref/nn/encoder.h"
#include "artpref/survey/types.h"

namespace artpref::testing {

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, const std::string& text);

ImageRGB RandomImage(int width, int height, uint64_t seed);

struct LinearData {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd w;
};

// x ~ N(0, 1), w ~ N(0, 1/d), y = x w + noise * N(0, 1).
LinearData MakeLinearData(int n, int d, double noise, uint64_t seed);
// Same generator with a fixed weight vector.
LinearData MakeLinearData(int n, const Eigen::VectorXd& w, double noise,
                          uint64_t seed);

// Ids "item000", "item001", ... with the rows of x as values.
std::vector<FeatureVector> ToFeatureVectors(const Eigen::MatrixXd& x,
                                            FeatureKind kind,
                                            const std::string& prefix = "item");

// A ratings table over one category whose raters all see y = x w mapped
// affinely onto [1, 9] plus per-rater noise, with features of width d.
struct SyntheticStudy {
  harness::RatingsTable table;
  std::vector<FeatureVector> features;
};
SyntheticStudy MakeSyntheticStudy(int items, int raters, int d,
                                  double rater_noise, uint64_t seed,
                                  FeatureKind kind = FeatureKind::kDeep2048);

// Seven participants answering five direct and five comparative tasks per
// condition. Participants listed in constant_direct give the same rating to
// every direct task; those in constant_comparative always choose "first".
// Elapsed times are drawn around direct_seconds and comparative_seconds with
// exact group means.
survey::SurveyDataset MakeSurvey(const std::vector<int>& constant_direct,
                                 const std::vector<int>& constant_comparative,
                                 double direct_seconds,
                                 double comparative_seconds, uint64_t seed);

// --- gradient check ---

enum class Objective { kMae, kHinge };

struct GradCheckCase {
  nn::EncoderModel model;
  Eigen::MatrixXd batch;              // hinge: first half i, second half j
  std::vector<Eigen::MatrixXd> masks;  // one per hidden block
  bool train = false;
  Objective objective = Objective::kMae;
  Eigen::VectorXd targets;  // MAE
  Eigen::VectorXi labels;   // hinge
  double l2 = 1e-5;
};

// A random encoder with input dim <= 16 and at most 200 parameters, random
// batch-norm state, fixed dropout masks and targets placed away from every
// kink of the objective.
GradCheckCase MakeGradCheckCase(uint64_t seed, bool train, Objective objective);

// Max over all parameters of |analytic - numeric| / max(|analytic|,
// |numeric|, 1e-6), with central differences of step h evaluated through the
// scalar oracle forward pass.
double MaxGradientRelativeError(const GradCheckCase& c, double h = 1e-5);

}  // namespace artpref::testing

#endif  // ARTPREF_TESTS_SUPPORT_SUPPORT_H_
