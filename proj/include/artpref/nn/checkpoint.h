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

#ifndef ARTPREF_NN_CHECKPOINT_H_
#define ARTPREF_NN_CHECKPOINT_H_

#include <filesystem>
#include <optional>

#include "artpref/features.h"
#include "artpref/nn/encoder.h"
#include "json.hpp"

namespace artpref::nn {

inline constexpr int kCheckpointVersion = 1;

struct EncoderCheckpoint {
  EncoderModel model;
  // Training-split statistics the model's inputs were standardized with.
  std::optional<StandardizationStats> standardization;
};

// JSON container: format tag, version, seed, topology, and per layer the
// row-major weights, biases and batch-norm state. Doubles are written with
// round-trip precision, so save/load reproduces parameters bit for bit.
nlohmann::json EncoderToJson(const EncoderModel& model,
                             const std::optional<StandardizationStats>& stats);
EncoderCheckpoint EncoderFromJson(const nlohmann::json& json);

void SaveEncoder(const EncoderModel& model,
                 const std::optional<StandardizationStats>& stats,
                 const std::filesystem::path& path);
EncoderCheckpoint LoadEncoder(const std::filesystem::path& path);

}  // namespace artpref::nn

#endif  // ARTPREF_NN_CHECKPOINT_H_
