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

#ifndef ARTPREF_MODELS_OLS_H_
#define ARTPREF_MODELS_OLS_H_

#include <filesystem>
#include <optional>

#include "Eigen/Core"
#include "artpref/features.h"

namespace artpref::models {

// y = w . x + b
struct OlsModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
};

struct OlsFit {
  OlsModel model;
  Eigen::Index rank = 0;
  // Set when the design matrix [X 1] lacks full column rank; the model is
  // then the minimum-norm least-squares solution.
  bool rank_deficient = false;
};

// Least squares with intercept via complete orthogonal decomposition.
// Requires more rows than parameters (m > d + 1); throws kInsufficientData
// otherwise and kLengthMismatch when targets do not match.
OlsFit FitOls(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets);

// Throws kDimensionMismatch.
Eigen::VectorXd Predict(const OlsModel& model, const Eigen::MatrixXd& features);

void SaveOls(const OlsModel& model,
             const std::optional<StandardizationStats>& stats,
             const std::filesystem::path& path);

}  // namespace artpref::models

#endif  // ARTPREF_MODELS_OLS_H_
