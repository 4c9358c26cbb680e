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

#include "artpref/harness/split.h"

#include <algorithm>

#include "artpref/error.h"
#include "artpref/random.h"

namespace artpref::harness {

size_t TrainSize(size_t n) { return (n * 140 + 119) / 239; }

SplitSpec MakeSplit(std::vector<std::string> item_ids, uint64_t seed) {
  if (item_ids.size() < 5) {
    throw Error(ErrorCode::kTooFewItems, "a split needs at least 5 items");
  }
  std::sort(item_ids.begin(), item_ids.end());
  if (std::adjacent_find(item_ids.begin(), item_ids.end()) != item_ids.end()) {
    throw Error(ErrorCode::kDuplicateItem, "duplicate item id in split input");
  }
  Rng rng(MixSeed(seed, 2));
  Shuffle(item_ids, rng);
  const size_t n_train = TrainSize(item_ids.size());
  SplitSpec split;
  split.seed = seed;
  split.train_ids.assign(item_ids.begin(), item_ids.begin() + n_train);
  split.test_ids.assign(item_ids.begin() + n_train, item_ids.end());
  std::sort(split.train_ids.begin(), split.train_ids.end());
  std::sort(split.test_ids.begin(), split.test_ids.end());
  return split;
}

}  // namespace artpref::harness
