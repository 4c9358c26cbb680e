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

#ifndef ARTPREF_MODELS_PAIRS_H_
#define ARTPREF_MODELS_PAIRS_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace artpref::models {

// Item i is preferred over item j when label = +1, j over i when -1.
struct PairwiseExample {
  std::string i;
  std::string j;
  int label = 1;

  bool operator==(const PairwiseExample&) const = default;
};

struct PairGenConfig {
  int n_per_item = 5;  // N
  uint64_t seed = 0;
  int max_resample = 20;
};

struct RatedItem {
  std::string item_id;
  double rating = 0.0;
};

// For every item, in input order, draws up to N distinct partners uniformly
// without replacement. A partner with an equal rating is discarded and
// redrawn, at most max_resample times per slot, after which the slot is
// skipped. Emits at most N * m examples, none of them tied. Throws
// kTooFewItems for fewer than two items.
std::vector<PairwiseExample> GeneratePairs(std::span<const RatedItem> items,
                                           const PairGenConfig& config);

// JSON lines: {"i":"<id>","j":"<id>","label":1}
void WritePairsFile(std::span<const PairwiseExample> pairs,
                    const std::filesystem::path& path);
std::vector<PairwiseExample> ReadPairsFile(const std::filesystem::path& path);

}  // namespace artpref::models

#endif  // ARTPREF_MODELS_PAIRS_H_
