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

#ifndef ARTPREF_NN_ENCODER_H_
#define ARTPREF_NN_ENCODER_H_

#include <cstdint>
#include <vector>

#include "Eigen/Core"
#include "artpref/random.h"

namespace artpref::nn {

// Topology of the scoring MLP. Each hidden block is
//   Dropout(BN(ReLU(W x + b)))
// and a final dense layer maps the last block to one score. The paper
// configuration is 2048 -> 512 -> 256 -> 128 -> 1 with dropout 0.25 on the
// first two blocks.
struct EncoderConfig {
  int input_dim = 2048;
  std::vector<int> hidden = {512, 256, 128};
  std::vector<double> dropout = {0.25, 0.25, 0.0};
  bool batch_norm = true;

  static EncoderConfig Paper() { return EncoderConfig{}; }
  // Same topology with different widths; dropout follows the paper pattern
  // (0.25 on the first two hidden blocks).
  static EncoderConfig WithWidths(int input_dim, std::vector<int> hidden);

  bool operator==(const EncoderConfig&) const = default;
};

struct DenseLayer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd biases;   // out
};

struct BatchNormState {
  Eigen::VectorXd gamma;
  Eigen::VectorXd beta;
  Eigen::VectorXd running_mean;
  Eigen::VectorXd running_var;
  double momentum = 0.1;
  double epsilon = 1e-5;
};

struct DropoutSpec {
  double rate = 0.0;
};

class EncoderModel {
 public:
  // He-uniform hidden weights, Glorot-uniform output weights, zero biases,
  // gamma = 1, beta = 0, running statistics (0, 1).
  static EncoderModel Create(const EncoderConfig& config, uint64_t seed);

  const EncoderConfig& config() const { return config_; }
  uint64_t seed() const { return seed_; }
  int input_dim() const { return config_.input_dim; }
  size_t num_hidden() const { return config_.hidden.size(); }

  // dense()[k] for k < num_hidden() are the hidden blocks; the last entry is
  // the output layer.
  std::vector<DenseLayer>& dense() { return dense_; }
  const std::vector<DenseLayer>& dense() const { return dense_; }
  // Empty when batch normalization is disabled.
  std::vector<BatchNormState>& batch_norm() { return batch_norm_; }
  const std::vector<BatchNormState>& batch_norm() const { return batch_norm_; }
  const std::vector<DropoutSpec>& dropout() const { return dropout_; }

  // Incremented whenever the optimizer changes parameters; activation caches
  // remember the version they were produced under.
  uint64_t version() const { return version_; }
  void MarkUpdated() { ++version_; }

  size_t ParameterCount() const;

 private:
  EncoderModel(const EncoderConfig& config, uint64_t seed);

  EncoderConfig config_;
  uint64_t seed_;
  uint64_t version_ = 0;
  std::vector<DenseLayer> dense_;
  std::vector<BatchNormState> batch_norm_;
  std::vector<DropoutSpec> dropout_;

  friend class EncoderBuilder;
};

// Assembles an EncoderModel from stored parameters (checkpoint loading).
class EncoderBuilder {
 public:
  static EncoderModel Build(const EncoderConfig& config, uint64_t seed,
                            std::vector<DenseLayer> dense,
                            std::vector<BatchNormState> batch_norm);
};

enum class Mode { kTrain, kEval };

struct HiddenRecord {
  Eigen::MatrixXd input;           // B x in
  Eigen::MatrixXd pre_activation;  // B x out
  Eigen::MatrixXd normalized;      // B x out, BN input after centring/scaling
  Eigen::RowVectorXd mean;         // statistics used for normalization
  Eigen::RowVectorXd biased_var;
  Eigen::RowVectorXd inv_std;
  Eigen::MatrixXd dropout_mask;    // multiplier (0 or 1/(1-rate)); empty if none
};

struct ActivationCache {
  uint64_t version = 0;
  Mode mode = Mode::kEval;
  Eigen::Index batch_size = 0;
  std::vector<HiddenRecord> hidden;
  Eigen::MatrixXd output_input;  // B x last hidden width
};

struct ForwardOptions {
  Mode mode = Mode::kEval;
  // Dropout masks are sampled from rng in train mode unless fixed masks are
  // supplied: one multiplier matrix per hidden block (empty = no dropout).
  // Fixed masks are applied in eval mode too.
  Rng* rng = nullptr;
  const std::vector<Eigen::MatrixXd>* dropout_masks = nullptr;
};

struct ForwardResult {
  Eigen::VectorXd scores;
  ActivationCache cache;
};

// Pure forward pass; never touches running statistics. Throws
// kDimensionMismatch and, in train mode, kBatchTooSmall for batches below 2.
ForwardResult Forward(const EncoderModel& model, const Eigen::MatrixXd& batch,
                      const ForwardOptions& options = {});

// Train-mode forward that samples dropout from rng and folds the batch
// statistics into the running statistics.
ForwardResult TrainForward(EncoderModel& model, const Eigen::MatrixXd& batch,
                           Rng& rng);

void UpdateRunningStats(EncoderModel& model, const ActivationCache& cache);

// Eval-mode scores.
Eigen::VectorXd Predict(const EncoderModel& model, const Eigen::MatrixXd& batch);

struct DenseGradient {
  Eigen::MatrixXd weights;
  Eigen::VectorXd biases;
};

struct BatchNormGradient {
  Eigen::VectorXd gamma;
  Eigen::VectorXd beta;
};

struct Gradients {
  std::vector<DenseGradient> dense;
  std::vector<BatchNormGradient> batch_norm;

  static Gradients ZerosLike(const EncoderModel& model);
  Gradients& operator+=(const Gradients& other);
};

// Back-propagates d(loss)/d(score) through the recorded pass. The weight
// decay term l2 * sum ||W||^2 contributes 2 * l2 * W to every weight matrix;
// biases and batch-norm parameters are not decayed. Throws kStaleCache when
// the model changed after the forward pass.
Gradients Backward(const EncoderModel& model, const ActivationCache& cache,
                   const Eigen::VectorXd& score_gradient, double l2);

// l2 * sum of squared weight entries.
double WeightPenalty(const EncoderModel& model, double l2);

// Flat views over parameters and gradients in a fixed order
// (per layer: weights, biases, then per BN block: gamma, beta).
std::vector<Eigen::Map<Eigen::ArrayXd>> ParameterBlocks(EncoderModel& model);
std::vector<Eigen::Map<const Eigen::ArrayXd>> GradientBlocks(
    const Gradients& gradients);

}  // namespace artpref::nn

#endif  // ARTPREF_NN_ENCODER_H_
