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

#ifndef ARTPREF_SURVEY_DATASET_H_
#define ARTPREF_SURVEY_DATASET_H_

#include <filesystem>
#include <string>

#include "artpref/survey/types.h"
#include "nlohmann/json.hpp"

namespace artpref::survey {

// Survey JSON:
//   {"participants": [{"id": "p1", "responses": [{"kind": "direct",
//     "condition": "abstract_beauty", "stimuli": ["a12"], "value": 7,
//     "elapsed_ms": 2310.5}, ...]}, ...]}
// Comparative values are "first" or "second".
nlohmann::json SurveyToJson(const SurveyDataset& dataset);
// Throws kMalformedRow on schema violations.
SurveyDataset SurveyFromJson(const nlohmann::json& json);

// Pieces of the schema shared with the HTTP API and the event log.
nlohmann::json ValueToJson(const ResponseValue& value);
// Integer ratings or "first"/"second"; throws kValueKindMismatch otherwise.
ResponseValue ValueFromJson(const nlohmann::json& json);
nlohmann::json TaskToJson(const TaskItem& task);
// Throws kMalformedRow.
TaskItem TaskFromJson(const nlohmann::json& json);

// Throws kEmptyInput for a dataset without responses, kIoFailure on write
// errors.
void ExportSurvey(const SurveyDataset& dataset,
                  const std::filesystem::path& path);
SurveyDataset ImportSurvey(const std::filesystem::path& path);

}  // namespace artpref::survey

#endif  // ARTPREF_SURVEY_DATASET_H_
