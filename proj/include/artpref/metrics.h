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

#ifndef ARTPREF_METRICS_H_
#define ARTPREF_METRICS_H_

#include <optional>
#include <span>
#include <vector>

namespace artpref::metrics {

// Throws kEmptyInput / kLengthMismatch.
double MeanAbsoluteError(std::span<const double> y, std::span<const double> y_hat);

// 1 - SS_res / SS_tot about mean(y). Throws kConstantTarget when y is
// constant and kInsufficientData below two points.
double RSquared(std::span<const double> y, std::span<const double> y_hat);

// Product-moment correlation; nullopt (undefined) when either side is
// constant.
std::optional<double> Pearson(std::span<const double> y,
                              std::span<const double> y_hat);

// 1-based ranks, ties receive the average of the ranks they span.
std::vector<double> AverageRanks(std::span<const double> values);

// Pearson correlation of average ranks; with no ties this equals
// 1 - 6 sum d^2 / (n (n^2 - 1)).
std::optional<double> Spearman(std::span<const double> y,
                               std::span<const double> y_hat);

// Fraction of aligned positions where two +-1 labelings agree. Throws
// kEmptyInput / kLengthMismatch / kInvalidLabel.
double PairwiseAccuracy(std::span<const int> labels_a,
                        std::span<const int> labels_b);

// (p_o - p_e) / (1 - p_e) with chance agreement from the product of
// marginals. When p_e = 1 the result is 1 if p_o = 1 and undefined otherwise.
std::optional<double> CohenKappa(std::span<const int> labels_a,
                                 std::span<const int> labels_b);

struct MetricsReport {
  double mae = 0.0;
  std::optional<double> r2;
  std::optional<double> pearson;
  std::optional<double> spearman;
  int n = 0;
};

// Requires n >= 2. R^2 is left undefined for a constant target.
MetricsReport Evaluate(std::span<const double> y, std::span<const double> y_hat);

}  // namespace artpref::metrics

#endif  // ARTPREF_METRICS_H_
