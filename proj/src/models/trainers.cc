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

#include "artpref/models/trainers.h"

#include <numeric>

#include "artpref/error.h"
#include "artpref/nn/losses.h"
#include "artpref/nn/optimizer.h"
#include "artpref/random.h"

namespace artpref::models {
namespace {

struct Optimizer {
  nn::AdamState adam;
  nn::PlateauScheduler plateau;

  explicit Optimizer(const TrainingConfig& config)
      : plateau(config.plateau_factor, config.plateau_patience,
                config.min_learning_rate) {
    adam.learning_rate = config.learning_rate;
  }

  void EndEpoch(double epoch_loss, TrainedEncoder& out) {
    out.loss_curve.push_back(epoch_loss);
    out.learning_rates.push_back(adam.learning_rate);
    adam.learning_rate = plateau.Update(epoch_loss, adam.learning_rate);
  }
};

void ValidateTraining(const TrainingConfig& config, int feature_dim) {
  if (config.encoder.input_dim != feature_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "encoder input_dim " + std::to_string(config.encoder.input_dim) +
                    " does not match feature dimension " +
                    std::to_string(feature_dim));
  }
  if (config.epochs < 1 || config.batch_size < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "need epochs >= 1 and batch_size >= 2");
  }
}

}  // namespace

ItemFeatureTable::ItemFeatureTable(const std::vector<FeatureVector>& features)
    : matrix_(ToMatrix(features)) {
  for (const auto& fv : features) {
    if (!index_.emplace(fv.item_id, static_cast<Eigen::Index>(ids_.size()))
             .second) {
      throw Error(ErrorCode::kDuplicateItem, "duplicate item " + fv.item_id);
    }
    ids_.push_back(fv.item_id);
  }
}

Eigen::Index ItemFeatureTable::RowOf(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(ErrorCode::kUnknownItem, "no features for item " + id);
  }
  return it->second;
}

Eigen::MatrixXd ItemFeatureTable::Rows(std::span<const std::string> ids) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(ids.size()), matrix_.cols());
  for (size_t r = 0; r < ids.size(); ++r) {
    out.row(static_cast<Eigen::Index>(r)) = matrix_.row(RowOf(ids[r]));
  }
  return out;
}

TrainingConfig TrainingConfig::Regression(nn::EncoderConfig encoder) {
  TrainingConfig config;
  config.encoder = std::move(encoder);
  config.epochs = 200;
  return config;
}

TrainingConfig TrainingConfig::Comparative(nn::EncoderConfig encoder) {
  TrainingConfig config;
  config.encoder = std::move(encoder);
  config.epochs = 100;
  return config;
}

std::vector<std::span<const size_t>> MakeBatches(std::span<const size_t> order,
                                                 int batch_size) {
  std::vector<std::span<const size_t>> batches;
  for (size_t start = 0; start < order.size(); start += batch_size) {
    const size_t len = std::min<size_t>(batch_size, order.size() - start);
    if (len == 1 && !batches.empty()) {
      const auto& last = batches.back();
      batches.back() = order.subspan(start - last.size(), last.size() + 1);
    } else {
      batches.push_back(order.subspan(start, len));
    }
  }
  return batches;
}

TrainedEncoder TrainDeepRegressor(const Eigen::MatrixXd& features,
                                  const Eigen::VectorXd& targets,
                                  const TrainingConfig& config, uint64_t seed) {
  if (features.rows() != targets.size()) {
    throw Error(ErrorCode::kLengthMismatch, "features and targets differ");
  }
  if (features.rows() < 20) {
    throw Error(ErrorCode::kInsufficientData,
                "deep regression needs >= 20 training rows");
  }
  ValidateTraining(config, static_cast<int>(features.cols()));

  TrainedEncoder out{nn::EncoderModel::Create(config.encoder, seed), {}, {}};
  Rng rng(MixSeed(seed, 1));
  Optimizer optimizer(config);
  std::vector<size_t> order(static_cast<size_t>(features.rows()));
  std::iota(order.begin(), order.end(), size_t{0});

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Shuffle(order, rng);
    double loss_sum = 0.0;
    for (const auto batch : MakeBatches(order, config.batch_size)) {
      Eigen::MatrixXd x(static_cast<Eigen::Index>(batch.size()),
                        features.cols());
      Eigen::VectorXd y(static_cast<Eigen::Index>(batch.size()));
      for (size_t r = 0; r < batch.size(); ++r) {
        x.row(r) = features.row(batch[r]);
        y(r) = targets(batch[r]);
      }
      const nn::ForwardResult pass = nn::TrainForward(out.model, x, rng);
      const nn::LossWithGradient loss = nn::MaeLossWithGradient(pass.scores, y);
      const nn::Gradients grads =
          nn::Backward(out.model, pass.cache, loss.gradient, config.l2);
      nn::AdamStep(optimizer.adam, out.model, grads);
      loss_sum += loss.loss * batch.size();
    }
    optimizer.EndEpoch(loss_sum / features.rows(), out);
  }
  return out;
}

TrainedEncoder TrainComparative(const ItemFeatureTable& features,
                                std::span<const PairwiseExample> pairs,
                                const TrainingConfig& config, uint64_t seed) {
  if (pairs.empty()) {
    throw Error(ErrorCode::kEmptyInput, "comparative training needs >= 1 pair");
  }
  ValidateTraining(config, features.dimension());
  std::vector<Eigen::Index> first(pairs.size());
  std::vector<Eigen::Index> second(pairs.size());
  for (size_t p = 0; p < pairs.size(); ++p) {
    if (pairs[p].label != 1 && pairs[p].label != -1) {
      throw Error(ErrorCode::kInvalidLabel, "pair label must be +1 or -1");
    }
    first[p] = features.RowOf(pairs[p].i);
    second[p] = features.RowOf(pairs[p].j);
  }

  TrainedEncoder out{nn::EncoderModel::Create(config.encoder, seed), {}, {}};
  Rng rng(MixSeed(seed, 1));
  Optimizer optimizer(config);
  std::vector<size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), size_t{0});
  const Eigen::MatrixXd& rows = features.matrix();

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Shuffle(order, rng);
    double loss_sum = 0.0;
    for (size_t start = 0; start < order.size();
         start += static_cast<size_t>(config.batch_size)) {
      const size_t len =
          std::min<size_t>(config.batch_size, order.size() - start);
      const auto b = static_cast<Eigen::Index>(len);
      Eigen::MatrixXd stacked(2 * b, rows.cols());
      Eigen::VectorXi labels(b);
      for (Eigen::Index r = 0; r < b; ++r) {
        const size_t p = order[start + static_cast<size_t>(r)];
        stacked.row(r) = rows.row(first[p]);
        stacked.row(b + r) = rows.row(second[p]);
        labels(r) = pairs[p].label;
      }

      const nn::ForwardResult pass = nn::TrainForward(out.model, stacked, rng);
      const Eigen::VectorXd diffs = pass.scores.head(b) - pass.scores.tail(b);
      const nn::LossWithGradient loss =
          nn::MeanHingeLossWithGradient(labels, diffs);
      Eigen::VectorXd score_gradient(2 * b);
      score_gradient.head(b) = loss.gradient;
      score_gradient.tail(b) = -loss.gradient;
      const nn::Gradients grads =
          nn::Backward(out.model, pass.cache, score_gradient, config.l2);
      nn::AdamStep(optimizer.adam, out.model, grads);
      loss_sum += loss.loss * static_cast<double>(len);
    }
    optimizer.EndEpoch(loss_sum / static_cast<double>(pairs.size()), out);
  }
  return out;
}

Eigen::VectorXd AffineCalibration::Apply(const Eigen::VectorXd& scores) const {
  return (scores.array() * scale + offset).matrix();
}

AffineCalibration CalibrateToRange(const Eigen::VectorXd& train_scores,
                                   double rating_min, double rating_max) {
  if (train_scores.size() == 0) {
    throw Error(ErrorCode::kEmptyInput, "no training scores to calibrate");
  }
  const double lo = train_scores.minCoeff();
  const double hi = train_scores.maxCoeff();
  AffineCalibration cal;
  if (hi - lo < 1e-12) {
    cal.scale = 0.0;
    cal.offset = 0.5 * (rating_min + rating_max);
    return cal;
  }
  cal.scale = (rating_max - rating_min) / (hi - lo);
  cal.offset = rating_min - cal.scale * lo;
  return cal;
}

}  // namespace artpref::models
