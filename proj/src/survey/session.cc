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

#include "artpref/survey/session.h"

#include <algorithm>

#include "artpref/error.h"
#include "artpref/random.h"

namespace artpref::survey {
namespace {

uint64_t Fnv1a(std::string_view text) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t ConditionIndex(const Condition& c) {
  return static_cast<uint64_t>(c.category) * 2 +
         static_cast<uint64_t>(c.dimension);
}

// The first `count` items of a seeded permutation of the category's pool.
std::vector<std::string> Draw(const StimulusPool& pool, Category category,
                              size_t count, uint64_t seed) {
  const auto it = pool.items.find(category);
  const size_t available = it == pool.items.end() ? 0 : it->second.size();
  if (available < count) {
    throw Error(ErrorCode::kPoolExhausted,
                std::string(harness::CategoryName(category)) + " pool has " +
                    std::to_string(available) + " items, plan needs " +
                    std::to_string(count));
  }
  std::vector<std::string> items = it->second;
  std::sort(items.begin(), items.end());
  Rng rng(seed);
  Shuffle(items, rng);
  items.resize(count);
  return items;
}

}  // namespace

std::vector<TaskItem> BuildTaskQueue(const std::string& participant_id,
                                     const SurveyPlan& plan,
                                     const StimulusPool& pool, uint64_t seed,
                                     const SessionOptions& options) {
  if (participant_id.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "participant id is empty");
  }
  std::map<Category, int> direct_needed;
  for (const auto& e : plan.entries) {
    if (e.direct < 0 || e.comparative < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative task count");
    }
    int& need = direct_needed[e.condition.category];
    need = std::max(need, e.direct);
  }
  std::map<Category, std::vector<std::string>> direct_items;
  for (const auto& [category, need] : direct_needed) {
    direct_items[category] =
        Draw(pool, category, static_cast<size_t>(need),
             MixSeed(seed, 100 + static_cast<uint64_t>(category)));
  }

  std::vector<TaskItem> direct;
  std::vector<TaskItem> comparative;
  for (const auto& e : plan.entries) {
    const auto& items = direct_items[e.condition.category];
    for (int k = 0; k < e.direct; ++k) {
      direct.push_back({Method::kDirect, e.condition, {items[k]}});
    }
    if (e.comparative > 0) {
      const auto drawn =
          Draw(pool, e.condition.category, 2 * static_cast<size_t>(e.comparative),
               MixSeed(seed, 200 + ConditionIndex(e.condition)));
      for (int k = 0; k < e.comparative; ++k) {
        comparative.push_back(
            {Method::kComparative, e.condition, {drawn[2 * k], drawn[2 * k + 1]}});
      }
    }
  }
  Rng order(MixSeed(seed, Fnv1a(participant_id)));
  Shuffle(direct, order);
  Shuffle(comparative, order);
  std::vector<TaskItem>& first = options.counterbalance ? comparative : direct;
  std::vector<TaskItem>& second = options.counterbalance ? direct : comparative;
  first.insert(first.end(), second.begin(), second.end());
  return first;
}

}  // namespace artpref::survey
