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

#ifndef ARTPREF_HARNESS_SPLIT_H_
#define ARTPREF_HARNESS_SPLIT_H_

#include <cstdint>
#include <string>
#include <vector>

namespace artpref::harness {

struct SplitSpec {
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  uint64_t seed = 0;
};

// round(n * 140 / 239): 140 of 239 items, 6 of 10.
size_t TrainSize(size_t n);

// Seeded uniform shuffle of the sorted ids; the first TrainSize(n) go to
// training. Both halves come back sorted. Throws kTooFewItems below 5 items
// and kDuplicateItem for repeated ids.
SplitSpec MakeSplit(std::vector<std::string> item_ids, uint64_t seed);

}  // namespace artpref::harness

#endif  // ARTPREF_HARNESS_SPLIT_H_
