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

#ifndef ARTPREF_MODELS_TRAINERS_H_
#define ARTPREF_MODELS_TRAINERS_H_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "Eigen/Core"
#include "artpref/features.h"
#include "artpref/models/pairs.h"
#include "artpref/nn/encoder.h"

namespace artpref::models {

// Feature rows addressable by item id.
class ItemFeatureTable {
 public:
  ItemFeatureTable() = default;
  // Throws kDuplicateItem or kDimensionMismatch.
  explicit ItemFeatureTable(const std::vector<FeatureVector>& features);

  int dimension() const { return static_cast<int>(matrix_.cols()); }
  size_t size() const { return ids_.size(); }
  bool contains(const std::string& id) const { return index_.contains(id); }

  // Throws kUnknownItem.
  Eigen::Index RowOf(const std::string& id) const;
  Eigen::MatrixXd Rows(std::span<const std::string> ids) const;
  const Eigen::MatrixXd& matrix() const { return matrix_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, Eigen::Index> index_;
  Eigen::MatrixXd matrix_;
};

struct TrainingConfig {
  nn::EncoderConfig encoder;
  int epochs = 200;
  int batch_size = 10;
  double l2 = 1e-5;
  double learning_rate = 1e-3;
  double plateau_factor = 0.3;
  int plateau_patience = 100;
  double min_learning_rate = 1e-6;

  // 200 epochs of MAE regression.
  static TrainingConfig Regression(nn::EncoderConfig encoder = {});
  // 100 epochs of pairwise hinge training, same schedule and decay.
  static TrainingConfig Comparative(nn::EncoderConfig encoder = {});
};

struct TrainedEncoder {
  nn::EncoderModel model;
  // Mean training loss per epoch (MAE or hinge, without the decay term).
  std::vector<double> loss_curve;
  std::vector<double> learning_rates;
};

// Splits a shuffled order into consecutive batches of batch_size. A trailing
// batch of one row is merged into its predecessor since train-mode batch
// normalization needs two rows.
std::vector<std::span<const size_t>> MakeBatches(std::span<const size_t> order,
                                                 int batch_size);

// Minibatch Adam on MAE with plateau scheduling and weight decay; returns the
// final-epoch model. Requires at least 20 rows (kInsufficientData).
TrainedEncoder TrainDeepRegressor(const Eigen::MatrixXd& features,
                                  const Eigen::VectorXd& targets,
                                  const TrainingConfig& config, uint64_t seed);

// Siamese hinge training. Each minibatch stacks the first and second members
// of its pairs into one batch for the single shared encoder, so
// C_ij = f(x_i) - f(x_j) is computed from one parameter set and the gradient
// flowing into it is the sum of both branches. Only pair labels are read.
TrainedEncoder TrainComparative(const ItemFeatureTable& features,
                                std::span<const PairwiseExample> pairs,
                                const TrainingConfig& config, uint64_t seed);

// Affine map sending [min, max] of the training scores onto [min, max] of the
// training ratings; used only to report MAE for latent utilities. Degenerate
// score ranges map to the rating midpoint.
struct AffineCalibration {
  double scale = 1.0;
  double offset = 0.0;

  Eigen::VectorXd Apply(const Eigen::VectorXd& scores) const;
};

AffineCalibration CalibrateToRange(const Eigen::VectorXd& train_scores,
                                   double rating_min, double rating_max);

}  // namespace artpref::models

#endif  // ARTPREF_MODELS_TRAINERS_H_
