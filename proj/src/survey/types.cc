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

#include "artpref/survey/types.h"

#include "artpref/error.h"

namespace artpref::survey {

std::string_view MethodName(Method m) {
  return m == Method::kDirect ? "direct" : "comparative";
}

Method ParseMethod(std::string_view text) {
  if (text == "direct") return Method::kDirect;
  if (text == "comparative") return Method::kComparative;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown method '" + std::string(text) + "'");
}

std::string_view ChoiceName(Choice c) {
  return c == Choice::kFirst ? "first" : "second";
}

Choice ParseChoice(std::string_view text) {
  if (text == "first") return Choice::kFirst;
  if (text == "second") return Choice::kSecond;
  throw Error(ErrorCode::kValueKindMismatch,
              "choice must be 'first' or 'second', got '" + std::string(text) +
                  "'");
}

void CheckValueKind(Method kind, const ResponseValue& value) {
  if (kind == Method::kDirect) {
    const int* rating = std::get_if<int>(&value);
    if (rating == nullptr) {
      throw Error(ErrorCode::kValueKindMismatch,
                  "direct task needs a rating, got a choice");
    }
    if (*rating < 1 || *rating > 10) {
      throw Error(ErrorCode::kValueKindMismatch,
                  "rating must be in 1..10, got " + std::to_string(*rating));
    }
  } else if (!std::holds_alternative<Choice>(value)) {
    throw Error(ErrorCode::kValueKindMismatch,
                "comparative task needs 'first' or 'second', got a rating");
  }
}

SurveyPlan SurveyPlan::Default() {
  SurveyPlan plan;
  for (const auto& condition : Condition::All()) {
    plan.entries.push_back({condition, 5, 5});
  }
  return plan;
}

int SurveyPlan::TotalTasks() const {
  int total = 0;
  for (const auto& e : entries) total += e.direct + e.comparative;
  return total;
}

}  // namespace artpref::survey
