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

#include "artpref/harness/results.h"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "artpref/error.h"
#include "text_util.h"

namespace artpref::harness {
namespace {

using Key = std::tuple<std::string, std::string, std::string, int, int, int>;

Key KeyOf(const RunRecord& r) {
  return {r.task, r.setting, r.model, r.rater, r.n_pairs, r.run};
}

std::string FormatOptional(const std::optional<double>& value) {
  return value ? internal::FormatDouble(*value) : "NA";
}

std::optional<double> ParseOptional(std::string_view field,
                                    const std::string& line) {
  if (internal::Trim(field) == "NA") return std::nullopt;
  const auto value = internal::ParseDouble(field);
  if (!value) {
    throw Error(ErrorCode::kMalformedRow, "bad metric in row: " + line);
  }
  return value;
}

int ParseIntField(std::string_view field, const std::string& line) {
  const auto value = internal::ParseInt(field);
  if (!value) {
    throw Error(ErrorCode::kMalformedRow, "bad integer in row: " + line);
  }
  return static_cast<int>(*value);
}

std::string FormatFixed(const std::optional<double>& value) {
  if (!value) return "NA";
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << *value;
  return s.str();
}

}  // namespace

std::string FormatResultRow(const RunRecord& r) {
  std::string line = r.task + "," + r.setting + "," + r.model + ",";
  line += r.rater == 0 ? "all" : std::to_string(r.rater);
  line += "," + std::to_string(r.n_pairs) + "," + std::to_string(r.run) + ",";
  line += internal::FormatDouble(r.metrics.mae) + ",";
  line += FormatOptional(r.metrics.r2) + ",";
  line += FormatOptional(r.metrics.pearson) + ",";
  line += FormatOptional(r.metrics.spearman);
  return line;
}

RunRecord ParseResultRow(const std::string& line) {
  const auto fields = internal::SplitCsvLine(line);
  if (fields.size() != 10) {
    throw Error(ErrorCode::kMalformedRow, "expected 10 fields: " + line);
  }
  RunRecord r;
  r.task = std::string(internal::Trim(fields[0]));
  r.setting = std::string(internal::Trim(fields[1]));
  r.model = std::string(internal::Trim(fields[2]));
  r.rater = internal::Trim(fields[3]) == "all"
                ? 0
                : ParseIntField(fields[3], line);
  r.n_pairs = ParseIntField(fields[4], line);
  r.run = ParseIntField(fields[5], line);
  const auto mae = internal::ParseDouble(fields[6]);
  if (!mae) throw Error(ErrorCode::kMalformedRow, "bad mae in row: " + line);
  r.metrics.mae = *mae;
  r.metrics.r2 = ParseOptional(fields[7], line);
  r.metrics.pearson = ParseOptional(fields[8], line);
  r.metrics.spearman = ParseOptional(fields[9], line);
  return r;
}

std::vector<RunRecord> ReadResults(const std::filesystem::path& path) {
  std::vector<std::string> lines;
  if (!internal::ReadLines(path.string(), lines)) {
    throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  }
  if (lines.empty() || internal::Trim(lines[0]) != kResultsHeader) {
    throw Error(ErrorCode::kMalformedRow,
                "missing results header in " + path.string());
  }
  std::vector<RunRecord> records;
  for (size_t k = 1; k < lines.size(); ++k) {
    if (internal::Trim(lines[k]).empty()) continue;
    records.push_back(ParseResultRow(lines[k]));
  }
  return records;
}

void MergeResults(const std::filesystem::path& path,
                  const std::vector<RunRecord>& records) {
  std::vector<RunRecord> merged;
  if (std::filesystem::exists(path)) merged = ReadResults(path);
  std::map<Key, size_t> index;
  for (size_t k = 0; k < merged.size(); ++k) index[KeyOf(merged[k])] = k;
  for (const auto& r : records) {
    const auto [it, inserted] = index.emplace(KeyOf(r), merged.size());
    if (inserted) {
      merged.push_back(r);
    } else {
      merged[it->second] = r;
    }
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + tmp.string());
    out << kResultsHeader << '\n';
    for (const auto& r : merged) out << FormatResultRow(r) << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure,
                "cannot replace " + path.string() + ": " + ec.message());
  }
}

void WriteSummary(const std::vector<AggregateRow>& rows, std::ostream& out) {
  out << "task,setting,model,rater,n_pairs,runs,mae,r2,pearson,spearman,"
         "excluded_r2,excluded_pearson,excluded_spearman\n";
  for (const auto& row : rows) {
    out << row.task << ',' << row.setting << ',' << row.model << ','
        << (row.rater == 0 ? std::string("all") : std::to_string(row.rater))
        << ',' << row.n_pairs << ',' << row.runs << ','
        << FormatFixed(row.mae) << ',' << FormatFixed(row.r2) << ','
        << FormatFixed(row.pearson) << ',' << FormatFixed(row.spearman) << ','
        << row.excluded_r2 << ',' << row.excluded_pearson << ','
        << row.excluded_spearman << '\n';
  }
}

}  // namespace artpref::harness
