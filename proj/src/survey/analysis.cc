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

#include "artpref/survey/analysis.h"

#include <algorithm>

#include "artpref/error.h"
#include "artpref/metrics.h"

namespace artpref::survey {
namespace {

ItemPair Canonical(const std::string& a, const std::string& b, int& label) {
  if (b < a) {
    label = -label;
    return {b, a};
  }
  return {a, b};
}

std::vector<ItemPair> Keys(const PairLabels& labels) {
  std::vector<ItemPair> keys;
  keys.reserve(labels.size());
  for (const auto& [pair, label] : labels) keys.push_back(pair);
  return keys;
}

}  // namespace

std::set<std::string> RetainedFor(const SurveyDataset& dataset,
                                  Method method) {
  std::set<std::string> retained;
  for (const auto& p : dataset.participants) {
    std::optional<ResponseValue> first;
    bool varies = false;
    for (const auto& r : p.responses) {
      if (r.kind != method) continue;
      if (!first) {
        first = r.value;
      } else if (r.value != *first) {
        varies = true;
        break;
      }
    }
    if (varies) retained.insert(p.id);
  }
  return retained;
}

VarianceFilterResult VarianceFilter(const SurveyDataset& dataset) {
  VarianceFilterResult result;
  result.retained_direct = RetainedFor(dataset, Method::kDirect);
  result.retained_comparative = RetainedFor(dataset, Method::kComparative);
  std::set_intersection(
      result.retained_direct.begin(), result.retained_direct.end(),
      result.retained_comparative.begin(), result.retained_comparative.end(),
      std::inserter(result.retained_joint, result.retained_joint.end()));
  std::set<std::string> everyone;
  for (const auto& p : dataset.participants) everyone.insert(p.id);
  const int total = static_cast<int>(everyone.size());
  result.removed_direct = total - static_cast<int>(result.retained_direct.size());
  result.removed_comparative =
      total - static_cast<int>(result.retained_comparative.size());
  return result;
}

PreferenceResult RatingsToPreferences(
    const std::map<std::string, double>& ratings,
    const std::vector<ItemPair>& pairs) {
  PreferenceResult result;
  for (const auto& pair : pairs) {
    const auto a = ratings.find(pair.first);
    const auto b = ratings.find(pair.second);
    if (a == ratings.end() || b == ratings.end()) {
      throw Error(ErrorCode::kUnratedItem,
                  "no rating for " +
                      (a == ratings.end() ? pair.first : pair.second));
    }
    if (a->second > b->second) {
      result.labels.push_back({pair, 1});
    } else if (a->second < b->second) {
      result.labels.push_back({pair, -1});
    } else {
      result.excluded.push_back(pair);
    }
  }
  return result;
}

PairLabels ParticipantLabels(const ParticipantResponses& participant,
                             const Condition& condition, Method method) {
  PairLabels labels;
  if (method == Method::kComparative) {
    for (const auto& r : participant.responses) {
      if (r.kind != method || r.condition != condition) continue;
      int label = std::get<Choice>(r.value) == Choice::kFirst ? 1 : -1;
      const ItemPair key = Canonical(r.stimuli[0], r.stimuli[1], label);
      labels[key] = label;
    }
    return labels;
  }
  std::map<std::string, double> ratings;
  for (const auto& r : participant.responses) {
    if (r.kind != method || r.condition != condition) continue;
    ratings[r.stimuli[0]] = std::get<int>(r.value);
  }
  std::vector<ItemPair> pairs;
  for (auto a = ratings.begin(); a != ratings.end(); ++a) {
    for (auto b = std::next(a); b != ratings.end(); ++b) {
      pairs.emplace_back(a->first, b->first);
    }
  }
  for (const auto& lp : RatingsToPreferences(ratings, pairs).labels) {
    labels[lp.pair] = lp.label;
  }
  return labels;
}

PairLabels ReferenceLabels(const std::map<std::string, double>& scores,
                           const std::vector<ItemPair>& pairs) {
  PairLabels labels;
  for (const auto& [a, b] : pairs) {
    const auto sa = scores.find(a);
    const auto sb = scores.find(b);
    if (sa == scores.end() || sb == scores.end() || sa->second == sb->second) {
      continue;
    }
    int label = sa->second > sb->second ? 1 : -1;
    const ItemPair key = Canonical(a, b, label);
    labels[key] = label;
  }
  return labels;
}

AgreementMatrix ComputeAgreement(
    const SurveyDataset& dataset, const Condition& condition, Method method,
    const std::vector<std::string>& participants,
    const std::optional<std::map<std::string, double>>& reference) {
  if (participants.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "agreement needs at least two raters");
  }
  AgreementMatrix out;
  std::vector<PairLabels> labels;
  for (const auto& id : participants) {
    const auto it = std::find_if(
        dataset.participants.begin(), dataset.participants.end(),
        [&](const ParticipantResponses& p) { return p.id == id; });
    if (it == dataset.participants.end()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown participant " + id);
    }
    labels.push_back(ParticipantLabels(*it, condition, method));
    out.raters.push_back(id);
  }
  if (reference) {
    std::set<ItemPair> all;
    for (const auto& l : labels) {
      for (const auto& key : Keys(l)) all.insert(key);
    }
    labels.insert(labels.begin(),
                  ReferenceLabels(*reference, {all.begin(), all.end()}));
    out.raters.insert(out.raters.begin(), "GT");
  }
  const size_t n = labels.size();
  out.accuracy.assign(n, std::vector<std::optional<double>>(n));
  out.kappa.assign(n, std::vector<std::optional<double>>(n));
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a; b < n; ++b) {
      std::vector<int> la, lb;
      for (const auto& [pair, label] : labels[a]) {
        const auto other = labels[b].find(pair);
        if (other == labels[b].end()) continue;
        la.push_back(label);
        lb.push_back(other->second);
      }
      if (la.empty()) continue;
      const double acc = metrics::PairwiseAccuracy(la, lb);
      const std::optional<double> kappa = metrics::CohenKappa(la, lb);
      out.accuracy[a][b] = out.accuracy[b][a] = acc;
      out.kappa[a][b] = out.kappa[b][a] = kappa;
    }
  }
  for (size_t a = 0; a < n; ++a) {
    double sum = 0.0;
    int count = 0;
    for (const auto& entry : out.accuracy[a]) {
      if (!entry) continue;
      sum += *entry;
      ++count;
    }
    out.row_average.push_back(count > 0 ? std::optional<double>(sum / count)
                                        : std::nullopt);
  }
  return out;
}

TimeStats ComputeTimeStats(const SurveyDataset& dataset,
                           const std::set<std::string>& participants) {
  TimeStats stats;
  double method_sum[2] = {0.0, 0.0};
  int method_groups[2] = {0, 0};
  for (const auto& condition : Condition::All()) {
    for (Method method : {Method::kDirect, Method::kComparative}) {
      double sum = 0.0;
      int n = 0;
      for (const auto& p : dataset.participants) {
        if (!participants.empty() && !participants.contains(p.id)) continue;
        for (const auto& r : p.responses) {
          if (r.kind != method || r.condition != condition) continue;
          sum += r.elapsed_ms / 1000.0;
          ++n;
        }
      }
      if (n == 0) continue;
      const double mean = sum / n;
      stats.groups.push_back({condition, method, mean, n});
      const int m = method == Method::kDirect ? 0 : 1;
      method_sum[m] += mean;
      ++method_groups[m];
    }
  }
  for (int m = 0; m < 2; ++m) {
    if (method_groups[m] == 0) {
      throw Error(ErrorCode::kEmptyGroup,
                  std::string("no ") +
                      std::string(MethodName(static_cast<Method>(m))) +
                      " events to time");
    }
  }
  stats.direct_mean = method_sum[0] / method_groups[0];
  stats.comparative_mean = method_sum[1] / method_groups[1];
  stats.reduction = (stats.direct_mean - stats.comparative_mean) /
                    stats.direct_mean;
  return stats;
}

}  // namespace artpref::survey
