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

#include "artpref/harness/ratings.h"

#include <cmath>
#include <fstream>
#include <set>

#include "artpref/error.h"
#include "text_util.h"

namespace artpref::harness {
namespace {

constexpr double kMinRating = 0.0;
constexpr double kMaxRating = 10.0;

double Score(const RatingRow& row, Dimension d) {
  return d == Dimension::kBeauty ? row.beauty : row.liking;
}

}  // namespace

std::string_view CategoryName(Category c) {
  return c == Category::kAbstract ? "abstract" : "representational";
}

std::string_view DimensionName(Dimension d) {
  return d == Dimension::kBeauty ? "beauty" : "liking";
}

Category ParseCategory(std::string_view text) {
  if (text == "abstract") return Category::kAbstract;
  if (text == "representational") return Category::kRepresentational;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown category '" + std::string(text) + "'");
}

Dimension ParseDimension(std::string_view text) {
  if (text == "beauty") return Dimension::kBeauty;
  if (text == "liking") return Dimension::kLiking;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown dimension '" + std::string(text) + "'");
}

std::string TaskSpec::Name() const {
  return std::string(CategoryName(category)) + "_" +
         std::string(DimensionName(dimension));
}

TaskSpec TaskSpec::Parse(std::string_view text) {
  const size_t sep = text.find('_');
  if (sep == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "task must look like abstract_beauty, got '" +
                    std::string(text) + "'");
  }
  return {ParseCategory(text.substr(0, sep)),
          ParseDimension(text.substr(sep + 1))};
}

std::vector<TaskSpec> TaskSpec::All() {
  return {{Category::kAbstract, Dimension::kBeauty},
          {Category::kAbstract, Dimension::kLiking},
          {Category::kRepresentational, Dimension::kBeauty},
          {Category::kRepresentational, Dimension::kLiking}};
}

RatingsTable RatingsTable::FromRows(std::vector<RatingRow> rows) {
  RatingsTable table;
  for (size_t n = 0; n < rows.size(); ++n) {
    const RatingRow& row = rows[n];
    for (double v : {row.beauty, row.liking}) {
      if (!(v >= kMinRating && v <= kMaxRating)) {
        throw Error(ErrorCode::kOutOfRangeRating,
                    "rating for item " + row.item_id + " rater " +
                        std::to_string(row.rater_id) + " outside [0, 10]");
      }
    }
    if (row.rater_id < 1) {
      throw Error(ErrorCode::kInvalidArgument, "rater_id must be >= 1");
    }
    if (!table.index_.emplace(std::make_pair(row.item_id, row.rater_id), n)
             .second) {
      throw Error(ErrorCode::kDuplicateKey,
                  "item " + row.item_id + " rated twice by rater " +
                      std::to_string(row.rater_id));
    }
    const auto [it, inserted] =
        table.categories_.emplace(row.item_id, row.category);
    if (!inserted && it->second != row.category) {
      throw Error(ErrorCode::kMalformedRow,
                  "item " + row.item_id + " appears under two categories");
    }
  }
  table.rows_ = std::move(rows);
  return table;
}

RatingsTable RatingsTable::Load(const std::filesystem::path& path) {
  std::vector<std::string> lines;
  if (!internal::ReadLines(path.string(), lines)) {
    throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  }
  if (lines.empty() ||
      internal::Trim(lines[0]) != "item_id,category,rater_id,beauty,liking") {
    throw Error(ErrorCode::kMalformedRow,
                path.string() +
                    ": header must be item_id,category,rater_id,beauty,liking");
  }
  std::vector<RatingRow> rows;
  for (size_t n = 1; n < lines.size(); ++n) {
    if (internal::Trim(lines[n]).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(n + 1);
    const auto fields = internal::SplitCsvLine(lines[n]);
    if (fields.size() != 5) {
      throw Error(ErrorCode::kMalformedRow, where + ": expected 5 fields");
    }
    RatingRow row;
    row.item_id = std::string(internal::Trim(fields[0]));
    try {
      row.category = ParseCategory(internal::Trim(fields[1]));
    } catch (const Error&) {
      throw Error(ErrorCode::kMalformedRow, where + ": bad category");
    }
    const auto rater = internal::ParseInt(fields[2]);
    const auto beauty = internal::ParseDouble(fields[3]);
    const auto liking = internal::ParseDouble(fields[4]);
    if (row.item_id.empty() || !rater || !beauty || !liking) {
      throw Error(ErrorCode::kMalformedRow, where + ": unparseable field");
    }
    row.rater_id = static_cast<int>(*rater);
    row.beauty = *beauty;
    row.liking = *liking;
    if (row.rater_id < 1) {
      throw Error(ErrorCode::kMalformedRow, where + ": rater_id must be >= 1");
    }
    rows.push_back(std::move(row));
  }
  return FromRows(std::move(rows));
}

void RatingsTable::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  out << "item_id,category,rater_id,beauty,liking\n";
  for (const auto& row : rows_) {
    out << row.item_id << ',' << CategoryName(row.category) << ','
        << row.rater_id << ',' << internal::FormatDouble(row.beauty) << ','
        << internal::FormatDouble(row.liking) << '\n';
  }
}

std::vector<std::string> RatingsTable::Items(Category category) const {
  std::vector<std::string> items;
  for (const auto& [id, c] : categories_) {
    if (c == category) items.push_back(id);
  }
  return items;
}

std::vector<int> RatingsTable::Raters() const {
  std::set<int> raters;
  for (const auto& row : rows_) raters.insert(row.rater_id);
  return {raters.begin(), raters.end()};
}

std::optional<double> RatingsTable::Rating(const std::string& item_id,
                                           int rater_id,
                                           Dimension dimension) const {
  const auto it = index_.find({item_id, rater_id});
  if (it == index_.end()) return std::nullopt;
  return Score(rows_[it->second], dimension);
}

std::map<Category, size_t> RatingsTable::ItemCounts() const {
  std::map<Category, size_t> counts{{Category::kAbstract, 0},
                                    {Category::kRepresentational, 0}};
  for (const auto& [id, c] : categories_) ++counts[c];
  return counts;
}

Targets AverageTargets(const RatingsTable& table, const TaskSpec& task) {
  const std::vector<int> raters = table.Raters();
  Targets out;
  for (const auto& item : table.Items(task.category)) {
    double sum = 0.0;
    for (int r : raters) {
      const auto v = table.Rating(item, r, task.dimension);
      if (!v) {
        throw Error(ErrorCode::kMissingRating,
                    "item " + item + " has no rating from rater " +
                        std::to_string(r));
      }
      sum += *v;
    }
    out[item] = sum / static_cast<double>(raters.size());
  }
  return out;
}

Targets RaterTargets(const RatingsTable& table, const TaskSpec& task,
                     int rater_id) {
  Targets out;
  for (const auto& item : table.Items(task.category)) {
    const auto v = table.Rating(item, rater_id, task.dimension);
    if (!v) {
      throw Error(ErrorCode::kMissingRating,
                  "item " + item + " has no rating from rater " +
                      std::to_string(rater_id));
    }
    out[item] = *v;
  }
  return out;
}

Targets CrossRaterTargets(const RatingsTable& table, const TaskSpec& task,
                          int held_out_rater) {
  const double raters = static_cast<double>(table.Raters().size());
  if (raters < 2) {
    throw Error(ErrorCode::kTooFewItems,
                "cross-rater targets need at least two raters");
  }
  const Targets mean = AverageTargets(table, task);
  const Targets own = RaterTargets(table, task, held_out_rater);
  Targets out;
  for (const auto& [item, avg] : mean) {
    out[item] = (raters * avg - own.at(item)) / (raters - 1.0);
  }
  return out;
}

}  // namespace artpref::harness
