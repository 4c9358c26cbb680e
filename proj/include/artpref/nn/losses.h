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

#ifndef ARTPREF_NN_LOSSES_H_
#define ARTPREF_NN_LOSSES_H_

#include "Eigen/Core"

namespace artpref::nn {

struct LossWithGradient {
  double loss = 0.0;
  Eigen::VectorXd gradient;  // d loss / d input, one entry per element
};

// (1/N) sum |y_i - p_i|. Throws kEmptyInput / kLengthMismatch.
double MaeLoss(const Eigen::VectorXd& predictions,
               const Eigen::VectorXd& targets);

// Gradient w.r.t. prediction i is -sign(y_i - p_i) / N, 0 at exact ties.
LossWithGradient MaeLossWithGradient(const Eigen::VectorXd& predictions,
                                     const Eigen::VectorXd& targets);

// max(0, 1 - label * diff). Throws kInvalidLabel unless label is +1 or -1.
double HingeLoss(int label, double diff);
// -label when label * diff < 1, else 0.
double HingeGradient(int label, double diff);

// Mean hinge loss over a batch of (label, C_ij) pairs, with the gradient
// w.r.t. each C_ij.
LossWithGradient MeanHingeLossWithGradient(const Eigen::VectorXi& labels,
                                           const Eigen::VectorXd& diffs);

}  // namespace artpref::nn

#endif  // ARTPREF_NN_LOSSES_H_
