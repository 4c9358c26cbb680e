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

#ifndef ARTPREF_NN_OPTIMIZER_H_
#define ARTPREF_NN_OPTIMIZER_H_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "artpref/nn/encoder.h"

namespace artpref::nn {

// Standard Adam with bias-corrected moments.
struct AdamState {
  std::vector<Eigen::ArrayXd> first_moment;
  std::vector<Eigen::ArrayXd> second_moment;
  int64_t step_count = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double learning_rate = 1e-3;
};

// Moments are allocated on the first step. Throws kShapeMismatch when the
// parameter and gradient blocks disagree with each other or with the state.
void AdamStep(AdamState& state, std::span<Eigen::Map<Eigen::ArrayXd>> params,
              std::span<const Eigen::Map<const Eigen::ArrayXd>> grads);

// Applies one step to every encoder parameter and bumps the model version.
void AdamStep(AdamState& state, EncoderModel& model, const Gradients& grads);

// Reduce-on-plateau schedule driven by the per-epoch training loss.
class PlateauScheduler {
 public:
  PlateauScheduler() = default;
  PlateauScheduler(double factor, int patience, double min_lr);

  // Returns the learning rate to use next. An epoch counts as an improvement
  // only if its loss is below the best so far by more than 1e-9.
  double Update(double epoch_loss, double current_lr);

  double factor() const { return factor_; }
  int patience() const { return patience_; }
  double min_lr() const { return min_lr_; }
  double best_loss() const { return best_loss_; }
  int epochs_since_improvement() const { return epochs_since_improvement_; }

 private:
  double factor_ = 0.3;
  int patience_ = 100;
  double min_lr_ = 1e-6;
  double best_loss_ = std::numeric_limits<double>::infinity();
  int epochs_since_improvement_ = 0;
};

}  // namespace artpref::nn

#endif  // ARTPREF_NN_OPTIMIZER_H_
