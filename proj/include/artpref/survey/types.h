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

#ifndef ARTPREF_SURVEY_TYPES_H_
#define ARTPREF_SURVEY_TYPES_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "artpref/harness/ratings.h"

namespace artpref::survey {

using harness::Category;
using harness::Dimension;
// A survey condition is a category x dimension combination.
using Condition = harness::TaskSpec;

enum class Method { kDirect, kComparative };
enum class Choice { kFirst, kSecond };

std::string_view MethodName(Method m);
Method ParseMethod(std::string_view text);  // kInvalidArgument
std::string_view ChoiceName(Choice c);
Choice ParseChoice(std::string_view text);  // kValueKindMismatch

struct TaskItem {
  Method kind = Method::kDirect;
  Condition condition;
  // One item for direct tasks, two distinct items for comparative ones.
  std::vector<std::string> stimuli;

  bool operator==(const TaskItem&) const = default;
};

// A 1-10 rating for direct tasks or a choice for comparative ones.
using ResponseValue = std::variant<int, Choice>;

// Throws kValueKindMismatch unless value fits kind (ratings must be 1..10).
void CheckValueKind(Method kind, const ResponseValue& value);

// One answered task as it appears in the Survey JSON.
struct SurveyResponse {
  Method kind = Method::kDirect;
  Condition condition;
  std::vector<std::string> stimuli;
  ResponseValue value = 1;
  double elapsed_ms = 0.0;

  bool operator==(const SurveyResponse&) const = default;
};

struct ParticipantResponses {
  std::string id;
  std::vector<SurveyResponse> responses;

  bool operator==(const ParticipantResponses&) const = default;
};

struct SurveyDataset {
  std::vector<ParticipantResponses> participants;

  bool operator==(const SurveyDataset&) const = default;
};

// Tasks per condition and method.
struct SurveyPlan {
  struct Entry {
    Condition condition;
    int direct = 0;
    int comparative = 0;
  };
  std::vector<Entry> entries;

  // Five direct ratings and five comparisons in each of the four conditions.
  static SurveyPlan Default();
  int TotalTasks() const;
};

// Stimulus item ids available per category.
struct StimulusPool {
  std::map<Category, std::vector<std::string>> items;
};

}  // namespace artpref::survey

#endif  // ARTPREF_SURVEY_TYPES_H_
