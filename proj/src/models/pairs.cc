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

#include "artpref/models/pairs.h"

#include <fstream>
#include <numeric>

#include "artpref/error.h"
#include "artpref/random.h"
#include "json.hpp"

namespace artpref::models {

std::vector<PairwiseExample> GeneratePairs(std::span<const RatedItem> items,
                                           const PairGenConfig& config) {
  if (items.size() < 2) {
    throw Error(ErrorCode::kTooFewItems, "pair generation needs >= 2 items");
  }
  if (config.n_per_item < 1 || config.max_resample < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "n_per_item must be >= 1 and max_resample >= 0");
  }
  Rng rng(config.seed);
  std::vector<PairwiseExample> pairs;
  pairs.reserve(items.size() * config.n_per_item);
  std::vector<size_t> pool;
  for (size_t a = 0; a < items.size(); ++a) {
    pool.resize(items.size() - 1);
    std::iota(pool.begin(), pool.begin() + a, size_t{0});
    std::iota(pool.begin() + a, pool.end(), a + 1);
    size_t remaining = pool.size();
    for (int slot = 0; slot < config.n_per_item && remaining > 0; ++slot) {
      int redraws = 0;
      while (remaining > 0) {
        // Partial Fisher-Yates: move the draw past the live region.
        const size_t pick = UniformIndex(rng, remaining);
        const size_t b = pool[pick];
        std::swap(pool[pick], pool[--remaining]);
        const double ya = items[a].rating;
        const double yb = items[b].rating;
        if (ya != yb) {
          pairs.push_back({items[a].item_id, items[b].item_id,
                           ya > yb ? 1 : -1});
          break;
        }
        if (++redraws > config.max_resample) break;
      }
    }
  }
  return pairs;
}

void WritePairsFile(std::span<const PairwiseExample> pairs,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  for (const auto& p : pairs) {
    nlohmann::ordered_json line;
    line["i"] = p.i;
    line["j"] = p.j;
    line["label"] = p.label;
    out << line.dump() << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed " + path.string());
}

std::vector<PairwiseExample> ReadPairsFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  std::vector<PairwiseExample> pairs;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_number);
    PairwiseExample p;
    try {
      const auto j = nlohmann::json::parse(line);
      p.i = j.at("i").get<std::string>();
      p.j = j.at("j").get<std::string>();
      p.label = j.at("label").get<int>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedRow, where + ": " + e.what());
    }
    if (p.label != 1 && p.label != -1) {
      throw Error(ErrorCode::kInvalidLabel, where + ": label must be 1 or -1");
    }
    if (p.i == p.j) {
      throw Error(ErrorCode::kMalformedRow, where + ": pair of identical items");
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace artpref::models
