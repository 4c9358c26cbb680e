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

#include "artpref/nn/encoder.h"

#include <cmath>
#include <string>

#include "artpref/error.h"

namespace artpref::nn {
namespace {

void ValidateConfig(const EncoderConfig& config) {
  if (config.input_dim < 1) {
    throw Error(ErrorCode::kInvalidArgument, "input_dim must be >= 1");
  }
  if (config.dropout.size() != config.hidden.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "need one dropout rate per hidden block");
  }
  for (int width : config.hidden) {
    if (width < 1) {
      throw Error(ErrorCode::kInvalidArgument, "hidden widths must be >= 1");
    }
  }
  for (double rate : config.dropout) {
    if (!(rate >= 0.0 && rate < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "dropout rate must be in [0,1)");
    }
  }
}

void FillUniform(Eigen::MatrixXd& m, double limit, Rng& rng) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      m(r, c) = UniformReal(rng, -limit, limit);
    }
  }
}

}  // namespace

EncoderConfig EncoderConfig::WithWidths(int input_dim, std::vector<int> hidden) {
  EncoderConfig config;
  config.input_dim = input_dim;
  config.dropout.assign(hidden.size(), 0.0);
  for (size_t k = 0; k < hidden.size() && k < 2; ++k) config.dropout[k] = 0.25;
  config.hidden = std::move(hidden);
  return config;
}

EncoderModel::EncoderModel(const EncoderConfig& config, uint64_t seed)
    : config_(config), seed_(seed) {
  ValidateConfig(config);
  for (double rate : config.dropout) dropout_.push_back({rate});
}

EncoderModel EncoderModel::Create(const EncoderConfig& config, uint64_t seed) {
  EncoderModel model(config, seed);
  Rng rng(MixSeed(seed, 0));
  int fan_in = config.input_dim;
  for (int width : config.hidden) {
    DenseLayer layer{Eigen::MatrixXd(width, fan_in),
                     Eigen::VectorXd::Zero(width)};
    FillUniform(layer.weights, std::sqrt(6.0 / fan_in), rng);
    model.dense_.push_back(std::move(layer));
    if (config.batch_norm) {
      model.batch_norm_.push_back({Eigen::VectorXd::Ones(width),
                                   Eigen::VectorXd::Zero(width),
                                   Eigen::VectorXd::Zero(width),
                                   Eigen::VectorXd::Ones(width)});
    }
    fan_in = width;
  }
  DenseLayer output{Eigen::MatrixXd(1, fan_in), Eigen::VectorXd::Zero(1)};
  FillUniform(output.weights, std::sqrt(6.0 / (fan_in + 1)), rng);
  model.dense_.push_back(std::move(output));
  return model;
}

size_t EncoderModel::ParameterCount() const {
  size_t count = 0;
  for (const auto& layer : dense_) {
    count += layer.weights.size() + layer.biases.size();
  }
  for (const auto& bn : batch_norm_) count += bn.gamma.size() + bn.beta.size();
  return count;
}

EncoderModel EncoderBuilder::Build(const EncoderConfig& config, uint64_t seed,
                                   std::vector<DenseLayer> dense,
                                   std::vector<BatchNormState> batch_norm) {
  EncoderModel model(config, seed);
  if (dense.size() != config.hidden.size() + 1 ||
      batch_norm.size() != (config.batch_norm ? config.hidden.size() : 0)) {
    throw Error(ErrorCode::kShapeMismatch, "layer count does not match config");
  }
  int fan_in = config.input_dim;
  for (size_t k = 0; k < dense.size(); ++k) {
    const int width = k < config.hidden.size() ? config.hidden[k] : 1;
    if (dense[k].weights.rows() != width || dense[k].weights.cols() != fan_in ||
        dense[k].biases.size() != width) {
      throw Error(ErrorCode::kShapeMismatch,
                  "dense layer " + std::to_string(k) + " has wrong shape");
    }
    if (k < batch_norm.size()) {
      const auto& bn = batch_norm[k];
      if (bn.gamma.size() != width || bn.beta.size() != width ||
          bn.running_mean.size() != width || bn.running_var.size() != width) {
        throw Error(ErrorCode::kShapeMismatch,
                    "batch-norm block " + std::to_string(k) +
                        " has wrong shape");
      }
    }
    fan_in = width;
  }
  model.dense_ = std::move(dense);
  model.batch_norm_ = std::move(batch_norm);
  return model;
}

ForwardResult Forward(const EncoderModel& model, const Eigen::MatrixXd& batch,
                      const ForwardOptions& options) {
  if (batch.cols() != model.input_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "batch has " + std::to_string(batch.cols()) +
                    " columns, encoder expects " +
                    std::to_string(model.input_dim()));
  }
  const bool train = options.mode == Mode::kTrain;
  if (train && batch.rows() < 2) {
    throw Error(ErrorCode::kBatchTooSmall,
                "train mode needs at least 2 rows for batch statistics");
  }
  if (batch.rows() < 1) {
    throw Error(ErrorCode::kEmptyInput, "empty batch");
  }
  if (options.dropout_masks != nullptr &&
      options.dropout_masks->size() != model.num_hidden()) {
    throw Error(ErrorCode::kShapeMismatch, "need one dropout mask per block");
  }

  ForwardResult result;
  ActivationCache& cache = result.cache;
  cache.version = model.version();
  cache.mode = options.mode;
  cache.batch_size = batch.rows();
  const Eigen::Index rows = batch.rows();

  Eigen::MatrixXd activations = batch;
  for (size_t k = 0; k < model.num_hidden(); ++k) {
    const DenseLayer& layer = model.dense()[k];
    HiddenRecord record;
    record.input = std::move(activations);
    record.pre_activation = record.input * layer.weights.transpose();
    record.pre_activation.rowwise() += layer.biases.transpose();
    Eigen::MatrixXd out = record.pre_activation.cwiseMax(0.0);

    if (!model.batch_norm().empty()) {
      const BatchNormState& bn = model.batch_norm()[k];
      if (train) {
        record.mean = out.colwise().mean();
        record.biased_var =
            (out.rowwise() - record.mean).array().square().colwise().mean();
      } else {
        record.mean = bn.running_mean.transpose();
        record.biased_var = bn.running_var.transpose();
      }
      record.inv_std =
          (record.biased_var.array() + bn.epsilon).rsqrt().matrix();
      record.normalized = ((out.rowwise() - record.mean).array().rowwise() *
                           record.inv_std.array())
                              .matrix();
      out = (record.normalized.array().rowwise() *
             bn.gamma.transpose().array())
                .matrix();
      out.rowwise() += bn.beta.transpose();
    }

    // Fixed masks apply in either mode so eval-mode batch normalization can
    // be combined with a frozen dropout pattern.
    if (train || options.dropout_masks != nullptr) {
      if (options.dropout_masks != nullptr) {
        record.dropout_mask = (*options.dropout_masks)[k];
        if (record.dropout_mask.size() != 0 &&
            (record.dropout_mask.rows() != rows ||
             record.dropout_mask.cols() != out.cols())) {
          throw Error(ErrorCode::kShapeMismatch, "dropout mask shape mismatch");
        }
      } else if (model.dropout()[k].rate > 0.0) {
        if (options.rng == nullptr) {
          throw Error(ErrorCode::kInvalidArgument,
                      "train mode with dropout needs an rng");
        }
        const double rate = model.dropout()[k].rate;
        const double scale = 1.0 / (1.0 - rate);
        record.dropout_mask.resize(rows, out.cols());
        for (Eigen::Index r = 0; r < rows; ++r) {
          for (Eigen::Index c = 0; c < out.cols(); ++c) {
            record.dropout_mask(r, c) =
                UniformUnit(*options.rng) < rate ? 0.0 : scale;
          }
        }
      }
      if (record.dropout_mask.size() != 0) {
        out = out.cwiseProduct(record.dropout_mask);
      }
    }
    activations = std::move(out);
    cache.hidden.push_back(std::move(record));
  }

  const DenseLayer& output = model.dense().back();
  result.scores = activations * output.weights.row(0).transpose();
  result.scores.array() += output.biases(0);
  cache.output_input = std::move(activations);
  return result;
}

void UpdateRunningStats(EncoderModel& model, const ActivationCache& cache) {
  if (cache.mode != Mode::kTrain || model.batch_norm().empty()) return;
  const double n = static_cast<double>(cache.batch_size);
  for (size_t k = 0; k < model.num_hidden(); ++k) {
    BatchNormState& bn = model.batch_norm()[k];
    const HiddenRecord& record = cache.hidden[k];
    const double m = bn.momentum;
    bn.running_mean = (1.0 - m) * bn.running_mean + m * record.mean.transpose();
    bn.running_var = (1.0 - m) * bn.running_var +
                     m * (n / (n - 1.0)) * record.biased_var.transpose();
  }
}

ForwardResult TrainForward(EncoderModel& model, const Eigen::MatrixXd& batch,
                           Rng& rng) {
  ForwardResult result = Forward(model, batch, {Mode::kTrain, &rng, nullptr});
  UpdateRunningStats(model, result.cache);
  return result;
}

Eigen::VectorXd Predict(const EncoderModel& model,
                        const Eigen::MatrixXd& batch) {
  return Forward(model, batch, {Mode::kEval, nullptr, nullptr}).scores;
}

Gradients Gradients::ZerosLike(const EncoderModel& model) {
  Gradients g;
  for (const auto& layer : model.dense()) {
    g.dense.push_back(
        {Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols()),
         Eigen::VectorXd::Zero(layer.biases.size())});
  }
  for (const auto& bn : model.batch_norm()) {
    g.batch_norm.push_back({Eigen::VectorXd::Zero(bn.gamma.size()),
                            Eigen::VectorXd::Zero(bn.beta.size())});
  }
  return g;
}

Gradients& Gradients::operator+=(const Gradients& other) {
  if (dense.size() != other.dense.size() ||
      batch_norm.size() != other.batch_norm.size()) {
    throw Error(ErrorCode::kShapeMismatch, "gradient sets differ in layout");
  }
  for (size_t k = 0; k < dense.size(); ++k) {
    dense[k].weights += other.dense[k].weights;
    dense[k].biases += other.dense[k].biases;
  }
  for (size_t k = 0; k < batch_norm.size(); ++k) {
    batch_norm[k].gamma += other.batch_norm[k].gamma;
    batch_norm[k].beta += other.batch_norm[k].beta;
  }
  return *this;
}

Gradients Backward(const EncoderModel& model, const ActivationCache& cache,
                   const Eigen::VectorXd& score_gradient, double l2) {
  if (cache.version != model.version() ||
      cache.hidden.size() != model.num_hidden()) {
    throw Error(ErrorCode::kStaleCache,
                "activation cache does not belong to the current parameters");
  }
  if (score_gradient.size() != cache.batch_size) {
    throw Error(ErrorCode::kShapeMismatch,
                "score gradient length differs from batch size");
  }
  Gradients grads = Gradients::ZerosLike(model);
  const bool train = cache.mode == Mode::kTrain;
  const double n = static_cast<double>(cache.batch_size);

  const DenseLayer& output = model.dense().back();
  grads.dense.back().weights =
      score_gradient.transpose() * cache.output_input;
  grads.dense.back().biases(0) = score_gradient.sum();
  // B x width
  Eigen::MatrixXd upstream = score_gradient * output.weights;

  for (size_t k = model.num_hidden(); k-- > 0;) {
    const HiddenRecord& record = cache.hidden[k];
    const DenseLayer& layer = model.dense()[k];
    if (record.dropout_mask.size() != 0) {
      upstream = upstream.cwiseProduct(record.dropout_mask);
    }
    if (!model.batch_norm().empty()) {
      const BatchNormState& bn = model.batch_norm()[k];
      grads.batch_norm[k].gamma =
          upstream.cwiseProduct(record.normalized).colwise().sum().transpose();
      grads.batch_norm[k].beta = upstream.colwise().sum().transpose();
      const Eigen::MatrixXd d_normalized =
          (upstream.array().rowwise() * bn.gamma.transpose().array()).matrix();
      if (train) {
        const Eigen::RowVectorXd sum_d = d_normalized.colwise().sum();
        const Eigen::RowVectorXd sum_dx =
            d_normalized.cwiseProduct(record.normalized).colwise().sum();
        Eigen::MatrixXd centred = n * d_normalized;
        centred.rowwise() -= sum_d;
        centred -= (record.normalized.array().rowwise() * sum_dx.array())
                       .matrix();
        upstream = (centred.array().rowwise() *
                    (record.inv_std.array() / n))
                       .matrix();
      } else {
        upstream = (d_normalized.array().rowwise() * record.inv_std.array())
                       .matrix();
      }
    }
    // ReLU.
    upstream = (record.pre_activation.array() > 0.0)
                   .select(upstream, 0.0);
    grads.dense[k].weights = upstream.transpose() * record.input;
    grads.dense[k].biases = upstream.colwise().sum().transpose();
    if (k > 0) upstream = upstream * layer.weights;
  }

  if (l2 != 0.0) {
    for (size_t k = 0; k < grads.dense.size(); ++k) {
      grads.dense[k].weights += 2.0 * l2 * model.dense()[k].weights;
    }
  }
  return grads;
}

double WeightPenalty(const EncoderModel& model, double l2) {
  double sum = 0.0;
  for (const auto& layer : model.dense()) sum += layer.weights.squaredNorm();
  return l2 * sum;
}

std::vector<Eigen::Map<Eigen::ArrayXd>> ParameterBlocks(EncoderModel& model) {
  std::vector<Eigen::Map<Eigen::ArrayXd>> blocks;
  for (auto& layer : model.dense()) {
    blocks.emplace_back(layer.weights.data(), layer.weights.size());
    blocks.emplace_back(layer.biases.data(), layer.biases.size());
  }
  for (auto& bn : model.batch_norm()) {
    blocks.emplace_back(bn.gamma.data(), bn.gamma.size());
    blocks.emplace_back(bn.beta.data(), bn.beta.size());
  }
  return blocks;
}

std::vector<Eigen::Map<const Eigen::ArrayXd>> GradientBlocks(
    const Gradients& gradients) {
  std::vector<Eigen::Map<const Eigen::ArrayXd>> blocks;
  for (const auto& layer : gradients.dense) {
    blocks.emplace_back(layer.weights.data(), layer.weights.size());
    blocks.emplace_back(layer.biases.data(), layer.biases.size());
  }
  for (const auto& bn : gradients.batch_norm) {
    blocks.emplace_back(bn.gamma.data(), bn.gamma.size());
    blocks.emplace_back(bn.beta.data(), bn.beta.size());
  }
  return blocks;
}

}  // namespace artpref::nn
