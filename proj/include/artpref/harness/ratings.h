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

#ifndef ARTPREF_HARNESS_RATINGS_H_
#define ARTPREF_HARNESS_RATINGS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace artpref::harness {

enum class Category { kAbstract, kRepresentational };
enum class Dimension { kBeauty, kLiking };

std::string_view CategoryName(Category c);
std::string_view DimensionName(Dimension d);
// Throws kInvalidArgument.
Category ParseCategory(std::string_view text);
Dimension ParseDimension(std::string_view text);

struct TaskSpec {
  Category category = Category::kAbstract;
  Dimension dimension = Dimension::kBeauty;

  // "abstract_beauty", "representational_liking", ...
  std::string Name() const;
  static TaskSpec Parse(std::string_view text);
  static std::vector<TaskSpec> All();

  bool operator==(const TaskSpec&) const = default;
};

struct RatingRow {
  std::string item_id;
  Category category = Category::kAbstract;
  int rater_id = 1;
  double beauty = 0.0;
  double liking = 0.0;
};

// Per-item, per-rater scores on the 0-10 scale.
class RatingsTable {
 public:
  // Throws kOutOfRangeRating, kDuplicateKey, kMalformedRow (including an item
  // listed under two categories), kInvalidArgument for rater ids < 1.
  static RatingsTable FromRows(std::vector<RatingRow> rows);
  // Reads "item_id,category,rater_id,beauty,liking". Also kIoFailure.
  static RatingsTable Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;

  const std::vector<RatingRow>& rows() const { return rows_; }
  // Sorted item ids of one category.
  std::vector<std::string> Items(Category category) const;
  // Sorted distinct rater ids.
  std::vector<int> Raters() const;
  std::optional<double> Rating(const std::string& item_id, int rater_id,
                               Dimension dimension) const;
  std::map<Category, size_t> ItemCounts() const;

 private:
  std::vector<RatingRow> rows_;
  std::map<std::pair<std::string, int>, size_t> index_;
  std::map<std::string, Category> categories_;
};

using Targets = std::map<std::string, double>;

// Mean over all raters for every item of the task's category. Throws
// kMissingRating if any rater lacks a score.
Targets AverageTargets(const RatingsTable& table, const TaskSpec& task);

// One rater's own scores.
Targets RaterTargets(const RatingsTable& table, const TaskSpec& task,
                     int rater_id);

// Leave-one-out mean (R * mean - y_r) / (R - 1). Throws kTooFewItems when
// fewer than two raters exist.
Targets CrossRaterTargets(const RatingsTable& table, const TaskSpec& task,
                          int held_out_rater);

}  // namespace artpref::harness

#endif  // ARTPREF_HARNESS_RATINGS_H_
