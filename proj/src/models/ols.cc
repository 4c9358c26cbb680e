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

#include "artpref/models/ols.h"

#include <fstream>
#include <string>
#include <vector>

#include "Eigen/QR"
#include "artpref/error.h"
#include "json.hpp"

namespace artpref::models {

OlsFit FitOls(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets) {
  const Eigen::Index m = features.rows();
  const Eigen::Index d = features.cols();
  if (targets.size() != m) {
    throw Error(ErrorCode::kLengthMismatch,
                "targets do not match the number of feature rows");
  }
  if (m <= d + 1) {
    throw Error(ErrorCode::kInsufficientData,
                "OLS needs more rows (" + std::to_string(m) +
                    ") than parameters (" + std::to_string(d + 1) + ")");
  }
  Eigen::MatrixXd design(m, d + 1);
  design.leftCols(d) = features;
  design.col(d).setOnes();

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> solver(design);
  const Eigen::VectorXd solution = solver.solve(targets);

  OlsFit fit;
  fit.rank = solver.rank();
  fit.rank_deficient = fit.rank < d + 1;
  fit.model.weights = solution.head(d);
  fit.model.bias = solution(d);
  return fit;
}

Eigen::VectorXd Predict(const OlsModel& model,
                        const Eigen::MatrixXd& features) {
  if (features.cols() != model.weights.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feature dimension " + std::to_string(features.cols()) +
                    " does not match OLS model dimension " +
                    std::to_string(model.weights.size()));
  }
  Eigen::VectorXd out = features * model.weights;
  out.array() += model.bias;
  return out;
}

void SaveOls(const OlsModel& model,
             const std::optional<StandardizationStats>& stats,
             const std::filesystem::path& path) {
  nlohmann::json j;
  j["format"] = "artpref-ols";
  j["version"] = 1;
  j["weights"] = std::vector<double>(model.weights.data(),
                                     model.weights.data() + model.weights.size());
  j["bias"] = model.bias;
  if (stats) {
    j["standardization"] = {{"means", stats->means},
                            {"stddevs", stats->stddevs}};
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  out << j.dump() << '\n';
}

}  // namespace artpref::models
