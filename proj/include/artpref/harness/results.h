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

#ifndef ARTPREF_HARNESS_RESULTS_H_
#define ARTPREF_HARNESS_RESULTS_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "artpref/harness/experiment.h"

namespace artpref::harness {

inline constexpr char kResultsHeader[] =
    "task,setting,model,rater,n_pairs,run,mae,r2,pearson,spearman";

// One Results CSV line, without the trailing newline. Undefined metrics are
// written as NA and the average setting's rater as "all".
std::string FormatResultRow(const RunRecord& record);

// Parses a line produced by FormatResultRow. Throws kMalformedRow.
RunRecord ParseResultRow(const std::string& line);

// Reads a Results CSV. Throws kIoFailure, or kMalformedRow on a bad header
// or row. The seed field of each record is left at 0.
std::vector<RunRecord> ReadResults(const std::filesystem::path& path);

// Merges records into the file at path, creating it if needed. A record
// whose key (task, setting, model, rater, n_pairs, run) is already present
// replaces the old line in place; new keys are appended in the given order.
// The file is rewritten through a temporary and renamed.
void MergeResults(const std::filesystem::path& path,
                  const std::vector<RunRecord>& records);

// Human-readable summary of aggregated rows, one per key, including how
// many runs were dropped from each correlation mean.
void WriteSummary(const std::vector<AggregateRow>& rows, std::ostream& out);

}  // namespace artpref::harness

#endif  // ARTPREF_HARNESS_RESULTS_H_
