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

#include "artpref/nn/checkpoint.h"

#include <fstream>
#include <string>
#include <vector>

#include "artpref/error.h"

namespace artpref::nn {
namespace {

using nlohmann::json;

json VectorToJson(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd VectorFromJson(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                           static_cast<Eigen::Index>(values.size()));
}

}  // namespace

json EncoderToJson(const EncoderModel& model,
                   const std::optional<StandardizationStats>& stats) {
  const EncoderConfig& config = model.config();
  json out;
  out["format"] = "artpref-encoder";
  out["version"] = kCheckpointVersion;
  out["seed"] = model.seed();
  out["config"] = {{"input_dim", config.input_dim},
                   {"hidden", config.hidden},
                   {"dropout", config.dropout},
                   {"batch_norm", config.batch_norm}};
  json layers = json::array();
  for (size_t k = 0; k < model.dense().size(); ++k) {
    const DenseLayer& layer = model.dense()[k];
    std::vector<double> weights;
    weights.reserve(layer.weights.size());
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        weights.push_back(layer.weights(r, c));
      }
    }
    json entry = {{"out", layer.weights.rows()},
                  {"in", layer.weights.cols()},
                  {"weights", weights},
                  {"biases", VectorToJson(layer.biases)}};
    if (k < model.batch_norm().size()) {
      const BatchNormState& bn = model.batch_norm()[k];
      entry["batch_norm"] = {{"gamma", VectorToJson(bn.gamma)},
                             {"beta", VectorToJson(bn.beta)},
                             {"running_mean", VectorToJson(bn.running_mean)},
                             {"running_var", VectorToJson(bn.running_var)},
                             {"momentum", bn.momentum},
                             {"epsilon", bn.epsilon}};
    }
    layers.push_back(std::move(entry));
  }
  out["layers"] = std::move(layers);
  if (stats) {
    out["standardization"] = {{"means", stats->means},
                              {"stddevs", stats->stddevs}};
  }
  return out;
}

EncoderCheckpoint EncoderFromJson(const json& j) {
  try {
    if (j.at("format") != "artpref-encoder") {
      throw Error(ErrorCode::kUnsupportedFormat, "not an encoder checkpoint");
    }
    if (j.at("version").get<int>() != kCheckpointVersion) {
      throw Error(ErrorCode::kUnsupportedFormat,
                  "unsupported checkpoint version");
    }
    EncoderConfig config;
    const json& c = j.at("config");
    config.input_dim = c.at("input_dim").get<int>();
    config.hidden = c.at("hidden").get<std::vector<int>>();
    config.dropout = c.at("dropout").get<std::vector<double>>();
    config.batch_norm = c.at("batch_norm").get<bool>();

    std::vector<DenseLayer> dense;
    std::vector<BatchNormState> batch_norm;
    for (const json& entry : j.at("layers")) {
      const auto rows = entry.at("out").get<Eigen::Index>();
      const auto cols = entry.at("in").get<Eigen::Index>();
      const auto weights = entry.at("weights").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(weights.size()) != rows * cols) {
        throw Error(ErrorCode::kShapeMismatch, "weight count mismatch");
      }
      DenseLayer layer;
      layer.weights.resize(rows, cols);
      for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index col = 0; col < cols; ++col) {
          layer.weights(r, col) = weights[r * cols + col];
        }
      }
      layer.biases = VectorFromJson(entry.at("biases"));
      dense.push_back(std::move(layer));
      if (entry.contains("batch_norm")) {
        const json& bn = entry["batch_norm"];
        batch_norm.push_back({VectorFromJson(bn.at("gamma")),
                              VectorFromJson(bn.at("beta")),
                              VectorFromJson(bn.at("running_mean")),
                              VectorFromJson(bn.at("running_var")),
                              bn.at("momentum").get<double>(),
                              bn.at("epsilon").get<double>()});
      }
    }
    EncoderCheckpoint checkpoint{
        EncoderBuilder::Build(config, j.at("seed").get<uint64_t>(),
                              std::move(dense), std::move(batch_norm)),
        std::nullopt};
    if (j.contains("standardization")) {
      checkpoint.standardization = StandardizationStats{
          j["standardization"].at("means").get<std::vector<double>>(),
          j["standardization"].at("stddevs").get<std::vector<double>>()};
    }
    return checkpoint;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kUnsupportedFormat,
                std::string("malformed checkpoint: ") + e.what());
  }
}

void SaveEncoder(const EncoderModel& model,
                 const std::optional<StandardizationStats>& stats,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  out << EncoderToJson(model, stats).dump() << '\n';
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed " + path.string());
}

EncoderCheckpoint LoadEncoder(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kUnsupportedFormat,
                path.string() + ": " + e.what());
  }
  return EncoderFromJson(j);
}

}  // namespace artpref::nn
