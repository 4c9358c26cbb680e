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

#include "artpref/nn/optimizer.h"

#include <algorithm>
#include <cmath>

#include "artpref/error.h"

namespace artpref::nn {

void AdamStep(AdamState& state, std::span<Eigen::Map<Eigen::ArrayXd>> params,
              std::span<const Eigen::Map<const Eigen::ArrayXd>> grads) {
  if (params.size() != grads.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "parameter and gradient block counts differ");
  }
  for (size_t k = 0; k < params.size(); ++k) {
    if (params[k].size() != grads[k].size()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "parameter block " + std::to_string(k) +
                      " differs in size from its gradient");
    }
  }
  if (state.first_moment.empty()) {
    for (const auto& p : params) {
      state.first_moment.push_back(Eigen::ArrayXd::Zero(p.size()));
      state.second_moment.push_back(Eigen::ArrayXd::Zero(p.size()));
    }
  }
  if (state.first_moment.size() != params.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "optimizer state was built for a different parameter set");
  }
  for (size_t k = 0; k < params.size(); ++k) {
    if (state.first_moment[k].size() != params[k].size()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "optimizer state was built for a different parameter set");
    }
  }

  ++state.step_count;
  const double t = static_cast<double>(state.step_count);
  const double correction1 = 1.0 - std::pow(state.beta1, t);
  const double correction2 = 1.0 - std::pow(state.beta2, t);
  for (size_t k = 0; k < params.size(); ++k) {
    Eigen::ArrayXd& m = state.first_moment[k];
    Eigen::ArrayXd& v = state.second_moment[k];
    m = state.beta1 * m + (1.0 - state.beta1) * grads[k];
    v = state.beta2 * v + (1.0 - state.beta2) * grads[k].square();
    params[k] -= state.learning_rate * (m / correction1) /
                 ((v / correction2).sqrt() + state.epsilon);
  }
}

void AdamStep(AdamState& state, EncoderModel& model, const Gradients& grads) {
  auto params = ParameterBlocks(model);
  const auto grad_blocks = GradientBlocks(grads);
  AdamStep(state, params, grad_blocks);
  model.MarkUpdated();
}

PlateauScheduler::PlateauScheduler(double factor, int patience, double min_lr)
    : factor_(factor), patience_(patience), min_lr_(min_lr) {
  if (!(factor > 0.0 && factor < 1.0) || patience < 1 || min_lr <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid plateau schedule");
  }
}

double PlateauScheduler::Update(double epoch_loss, double current_lr) {
  if (epoch_loss < best_loss_ - 1e-9) {
    best_loss_ = epoch_loss;
    epochs_since_improvement_ = 0;
    return current_lr;
  }
  if (++epochs_since_improvement_ >= patience_) {
    epochs_since_improvement_ = 0;
    return std::max(current_lr * factor_, min_lr_);
  }
  return current_lr;
}

}  // namespace artpref::nn
