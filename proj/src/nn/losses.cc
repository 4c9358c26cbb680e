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

#include "artpref/nn/losses.h"

#include <algorithm>
#include <cmath>

#include "artpref/error.h"

namespace artpref::nn {
namespace {

void CheckLengths(Eigen::Index a, Eigen::Index b) {
  if (a == 0 || b == 0) throw Error(ErrorCode::kEmptyInput, "empty loss input");
  if (a != b) {
    throw Error(ErrorCode::kLengthMismatch, "loss inputs differ in length");
  }
}

void CheckLabel(int label) {
  if (label != 1 && label != -1) {
    throw Error(ErrorCode::kInvalidLabel,
                "pair label must be +1 or -1, got " + std::to_string(label));
  }
}

}  // namespace

double MaeLoss(const Eigen::VectorXd& predictions,
               const Eigen::VectorXd& targets) {
  CheckLengths(predictions.size(), targets.size());
  return (targets - predictions).cwiseAbs().mean();
}

LossWithGradient MaeLossWithGradient(const Eigen::VectorXd& predictions,
                                     const Eigen::VectorXd& targets) {
  CheckLengths(predictions.size(), targets.size());
  const double n = static_cast<double>(predictions.size());
  LossWithGradient out;
  out.loss = MaeLoss(predictions, targets);
  out.gradient.resize(predictions.size());
  for (Eigen::Index i = 0; i < predictions.size(); ++i) {
    const double residual = targets(i) - predictions(i);
    out.gradient(i) = residual > 0.0 ? -1.0 / n : residual < 0.0 ? 1.0 / n : 0.0;
  }
  return out;
}

double HingeLoss(int label, double diff) {
  CheckLabel(label);
  return std::max(0.0, 1.0 - label * diff);
}

double HingeGradient(int label, double diff) {
  CheckLabel(label);
  return label * diff < 1.0 ? -static_cast<double>(label) : 0.0;
}

LossWithGradient MeanHingeLossWithGradient(const Eigen::VectorXi& labels,
                                           const Eigen::VectorXd& diffs) {
  CheckLengths(labels.size(), diffs.size());
  const double n = static_cast<double>(diffs.size());
  LossWithGradient out;
  out.gradient.resize(diffs.size());
  for (Eigen::Index i = 0; i < diffs.size(); ++i) {
    out.loss += HingeLoss(labels(i), diffs(i));
    out.gradient(i) = HingeGradient(labels(i), diffs(i)) / n;
  }
  out.loss /= n;
  return out;
}

}  // namespace artpref::nn
