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

#ifndef ARTPREF_SURVEY_SESSION_H_
#define ARTPREF_SURVEY_SESSION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "artpref/survey/types.h"

namespace artpref::survey {

struct SessionOptions {
  // Comparative tasks come first when set; direct first otherwise.
  bool counterbalance = false;
};

// Builds a participant's task queue.
//
// Stimuli depend only on the seed, so every participant judges the same
// items and pairs and agreement between them is defined. Direct items are
// drawn per category and reused for both dimensions; comparative pairs are
// drawn per condition from distinct items. The order of tasks inside each
// method block is shuffled by seed and participant.
//
// Throws kPoolExhausted when a category cannot supply enough distinct items,
// kInvalidArgument for negative counts or an empty participant id.
std::vector<TaskItem> BuildTaskQueue(const std::string& participant_id,
                                     const SurveyPlan& plan,
                                     const StimulusPool& pool, uint64_t seed,
                                     const SessionOptions& options = {});

}  // namespace artpref::survey

#endif  // ARTPREF_SURVEY_SESSION_H_
