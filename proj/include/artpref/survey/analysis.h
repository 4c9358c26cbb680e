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

#ifndef ARTPREF_SURVEY_ANALYSIS_H_
#define ARTPREF_SURVEY_ANALYSIS_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "artpref/survey/types.h"

namespace artpref::survey {

// Participants whose responses under a method are not all identical. A
// participant with fewer than two responses for the method cannot vary and
// is dropped.
std::set<std::string> RetainedFor(const SurveyDataset& dataset, Method method);

struct VarianceFilterResult {
  std::set<std::string> retained_direct;
  std::set<std::string> retained_comparative;
  // Retained under both methods; the set used for joint analysis.
  std::set<std::string> retained_joint;
  int removed_direct = 0;
  int removed_comparative = 0;
};

VarianceFilterResult VarianceFilter(const SurveyDataset& dataset);

using ItemPair = std::pair<std::string, std::string>;

struct LabeledPair {
  ItemPair pair;
  int label = 1;  // +1 when the first item is preferred
};

struct PreferenceResult {
  std::vector<LabeledPair> labels;
  std::vector<ItemPair> excluded;  // tied ratings
};

// +1 if rating(first) > rating(second), -1 if lower, excluded if equal.
// Throws kUnratedItem if a pair references an item without a rating.
PreferenceResult RatingsToPreferences(
    const std::map<std::string, double>& ratings,
    const std::vector<ItemPair>& pairs);

// Pair labels keyed by the pair in (lower id, higher id) order.
using PairLabels = std::map<ItemPair, int>;

// One participant's labels in a condition. Direct ratings are converted over
// all unordered pairs of the items they rated; comparative choices are read
// directly.
PairLabels ParticipantLabels(const ParticipantResponses& participant,
                             const Condition& condition, Method method);

// Labels implied by reference scores for the given pairs; ties and items
// without a score are left out.
PairLabels ReferenceLabels(const std::map<std::string, double>& scores,
                           const std::vector<ItemPair>& pairs);

struct AgreementMatrix {
  // "GT" first when a reference is supplied, then the participants.
  std::vector<std::string> raters;
  // Pairwise accuracy over jointly judged pairs; nullopt without overlap.
  std::vector<std::vector<std::optional<double>>> accuracy;
  // Cohen's kappa over the same pairs; nullopt without overlap or when
  // kappa is undefined.
  std::vector<std::vector<std::optional<double>>> kappa;
  // Mean of each accuracy row over defined entries, diagonal and GT
  // included.
  std::vector<std::optional<double>> row_average;
};

// Agreement between the given participants (in the given order) for one
// condition and method. Unknown participant ids throw kInvalidArgument;
// fewer than two raters throws kInsufficientData.
AgreementMatrix ComputeAgreement(
    const SurveyDataset& dataset, const Condition& condition, Method method,
    const std::vector<std::string>& participants,
    const std::optional<std::map<std::string, double>>& reference = {});

struct TimeGroup {
  Condition condition;
  Method method = Method::kDirect;
  double mean_seconds = 0.0;
  int n = 0;
};

struct TimeStats {
  // Condition x method groups that have events, in condition order.
  std::vector<TimeGroup> groups;
  // Mean of the per-condition means of each method.
  double direct_mean = 0.0;
  double comparative_mean = 0.0;
  // (direct - comparative) / direct, as a fraction.
  double reduction = 0.0;
};

// Restricts to the given participants when the set is non-empty. Throws
// kEmptyGroup when either method has no events.
TimeStats ComputeTimeStats(const SurveyDataset& dataset,
                           const std::set<std::string>& participants = {});

}  // namespace artpref::survey

#endif  // ARTPREF_SURVEY_ANALYSIS_H_
