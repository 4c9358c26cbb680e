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

#include "artpref/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "artpref/error.h"

namespace artpref::metrics {
namespace {

void CheckAligned(size_t a, size_t b, size_t min_size) {
  if (a != b) throw Error(ErrorCode::kLengthMismatch, "inputs differ in length");
  if (a == 0) throw Error(ErrorCode::kEmptyInput, "empty input");
  if (a < min_size) {
    throw Error(ErrorCode::kInsufficientData,
                "need at least " + std::to_string(min_size) + " points");
  }
}

void CheckLabels(std::span<const int> labels) {
  for (int l : labels) {
    if (l != 1 && l != -1) {
      throw Error(ErrorCode::kInvalidLabel, "labels must be +1 or -1");
    }
  }
}

double Mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double MeanAbsoluteError(std::span<const double> y,
                         std::span<const double> y_hat) {
  CheckAligned(y.size(), y_hat.size(), 1);
  double sum = 0.0;
  for (size_t i = 0; i < y.size(); ++i) sum += std::abs(y[i] - y_hat[i]);
  return sum / static_cast<double>(y.size());
}

double RSquared(std::span<const double> y, std::span<const double> y_hat) {
  CheckAligned(y.size(), y_hat.size(), 2);
  const double mean = Mean(y);
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (size_t i = 0; i < y.size(); ++i) {
    ss_res += (y[i] - y_hat[i]) * (y[i] - y_hat[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  if (ss_tot == 0.0) {
    throw Error(ErrorCode::kConstantTarget, "R^2 undefined for constant y");
  }
  return 1.0 - ss_res / ss_tot;
}

std::optional<double> Pearson(std::span<const double> y,
                              std::span<const double> y_hat) {
  CheckAligned(y.size(), y_hat.size(), 2);
  const double my = Mean(y);
  const double mp = Mean(y_hat);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (size_t i = 0; i < y.size(); ++i) {
    const double dy = y[i] - my;
    const double dp = y_hat[i] - mp;
    sxy += dy * dp;
    sxx += dy * dy;
    syy += dp * dp;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  size_t start = 0;
  while (start < order.size()) {
    size_t end = start + 1;
    while (end < order.size() && values[order[end]] == values[order[start]]) {
      ++end;
    }
    // Positions start..end-1 hold ranks start+1..end.
    const double rank = 0.5 * static_cast<double>(start + 1 + end);
    for (size_t k = start; k < end; ++k) ranks[order[k]] = rank;
    start = end;
  }
  return ranks;
}

std::optional<double> Spearman(std::span<const double> y,
                               std::span<const double> y_hat) {
  CheckAligned(y.size(), y_hat.size(), 2);
  const std::vector<double> ry = AverageRanks(y);
  const std::vector<double> rp = AverageRanks(y_hat);
  return Pearson(ry, rp);
}

double PairwiseAccuracy(std::span<const int> labels_a,
                        std::span<const int> labels_b) {
  CheckAligned(labels_a.size(), labels_b.size(), 1);
  CheckLabels(labels_a);
  CheckLabels(labels_b);
  size_t agree = 0;
  for (size_t i = 0; i < labels_a.size(); ++i) {
    agree += labels_a[i] == labels_b[i] ? 1 : 0;
  }
  return static_cast<double>(agree) / static_cast<double>(labels_a.size());
}

std::optional<double> CohenKappa(std::span<const int> labels_a,
                                 std::span<const int> labels_b) {
  const double p_o = PairwiseAccuracy(labels_a, labels_b);
  const double n = static_cast<double>(labels_a.size());
  const double a_pos =
      static_cast<double>(std::count(labels_a.begin(), labels_a.end(), 1)) / n;
  const double b_pos =
      static_cast<double>(std::count(labels_b.begin(), labels_b.end(), 1)) / n;
  const double p_e = a_pos * b_pos + (1.0 - a_pos) * (1.0 - b_pos);
  if (p_e == 1.0) {
    if (p_o == 1.0) return 1.0;
    return std::nullopt;
  }
  return (p_o - p_e) / (1.0 - p_e);
}

MetricsReport Evaluate(std::span<const double> y,
                       std::span<const double> y_hat) {
  CheckAligned(y.size(), y_hat.size(), 2);
  MetricsReport report;
  report.n = static_cast<int>(y.size());
  report.mae = MeanAbsoluteError(y, y_hat);
  try {
    report.r2 = RSquared(y, y_hat);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kConstantTarget) throw;
  }
  report.pearson = Pearson(y, y_hat);
  report.spearman = Spearman(y, y_hat);
  return report;
}

}  // namespace artpref::metrics
