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

#include <cmath>
#include <vector>

#include "artpref/error.h"
#include "artpref/random.h"
#include "gtest/gtest.h"
#include "oracles/oracles.h"

namespace artpref::metrics {
namespace {

using V = std::vector<double>;
using L = std::vector<int>;

V RandomVector(Rng& rng, int n) {
  V v(n);
  for (double& x : v) x = StandardNormal(rng);
  return v;
}

TEST(MetricsTest, RSquaredExamples) {
  EXPECT_DOUBLE_EQ(RSquared(V{1, 2, 3}, V{1, 2, 3}), 1.0);
  EXPECT_DOUBLE_EQ(RSquared(V{1, 2, 3}, V{2, 2, 2}), 0.0);
  EXPECT_DOUBLE_EQ(RSquared(V{1, 2, 3}, V{3, 2, 1}), -3.0);
}

TEST(MetricsTest, RSquaredConstantTarget) {
  try {
    RSquared(V{2, 2, 2}, V{1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConstantTarget);
  }
}

TEST(MetricsTest, PearsonExamples) {
  EXPECT_DOUBLE_EQ(*Pearson(V{1, 2, 3}, V{2, 4, 6}), 1.0);
  EXPECT_DOUBLE_EQ(*Pearson(V{1, 2, 3}, V{-1, -2, -3}), -1.0);
  EXPECT_FALSE(Pearson(V{1, 2, 3}, V{4, 4, 4}).has_value());
}

TEST(MetricsTest, SpearmanExamples) {
  EXPECT_DOUBLE_EQ(*Spearman(V{1, 2, 3, 4}, V{1, 8, 27, 64}), 1.0);
  EXPECT_DOUBLE_EQ(*Spearman(V{1, 2, 3, 4}, V{2, 1, 3, 4}), 0.8);
  EXPECT_DOUBLE_EQ(*Spearman(V{1, 2, 3, 4}, V{4, 3, 2, 1}), -1.0);
  EXPECT_FALSE(Spearman(V{1, 2, 3}, V{5, 5, 5}).has_value());
}

TEST(MetricsTest, AverageRanksWithTies) {
  EXPECT_EQ(AverageRanks(V{10, 20, 20, 5}), (V{2, 3.5, 3.5, 1}));
}

TEST(MetricsTest, AccuracyAndKappaExamples) {
  EXPECT_EQ(PairwiseAccuracy(L{1, -1, 1}, L{1, -1, 1}), 1.0);
  EXPECT_EQ(PairwiseAccuracy(L{1, -1}, L{-1, 1}), 0.0);
  EXPECT_EQ(PairwiseAccuracy(L{1, 1, -1, -1}, L{1, -1, -1, 1}), 0.5);
  EXPECT_DOUBLE_EQ(*CohenKappa(L{1, 1, -1, -1}, L{1, 1, -1, -1}), 1.0);
  EXPECT_DOUBLE_EQ(*CohenKappa(L{1, 1, -1, -1}, L{1, -1, -1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(*CohenKappa(L{1, 1, 1, -1}, L{1, 1, -1, -1}), 0.5);
}

TEST(MetricsTest, KappaDegenerateMarginals) {
  EXPECT_EQ(*CohenKappa(L{1, 1, 1}, L{1, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(*CohenKappa(L{1, 1, 1}, L{1, 1, -1}), 0.0);
}

TEST(MetricsTest, LabelErrors) {
  try {
    PairwiseAccuracy(L{1, 0}, L{1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidLabel);
  }
  try {
    PairwiseAccuracy(L{1}, L{1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
}

TEST(MetricsTest, RandomInstancesMatchOracles) {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(UniformIndex(rng, 100));
    V y = RandomVector(rng, n);
    V p = RandomVector(rng, n);
    if (trial % 4 == 0) {
      for (double& x : y) x = std::round(x * 2);  // ties
    }
    EXPECT_NEAR(MeanAbsoluteError(y, p), oracle::Mae(y, p), 1e-10);
    if (*std::max_element(y.begin(), y.end()) !=
        *std::min_element(y.begin(), y.end())) {
      EXPECT_NEAR(RSquared(y, p), oracle::RSquared(y, p), 1e-10);
    }
    const auto pr = Pearson(y, p);
    const auto pr_oracle = oracle::Pearson(y, p);
    ASSERT_EQ(pr.has_value(), pr_oracle.has_value());
    if (pr) { EXPECT_NEAR(*pr, *pr_oracle, 1e-10); }
    const auto sp = Spearman(y, p);
    const auto sp_oracle = oracle::Spearman(y, p);
    ASSERT_EQ(sp.has_value(), sp_oracle.has_value());
    if (sp) { EXPECT_NEAR(*sp, *sp_oracle, 1e-10); }
    EXPECT_EQ(AverageRanks(y), oracle::Ranks(y));

    L a(n), b(n);
    for (int k = 0; k < n; ++k) {
      a[k] = UniformUnit(rng) < 0.6 ? 1 : -1;
      b[k] = UniformUnit(rng) < 0.3 ? 1 : -1;
    }
    EXPECT_NEAR(PairwiseAccuracy(a, b), oracle::Accuracy(a, b), 1e-10);
    const auto k = CohenKappa(a, b);
    const auto k_oracle = oracle::Kappa(a, b);
    ASSERT_EQ(k.has_value(), k_oracle.has_value());
    if (k) { EXPECT_NEAR(*k, *k_oracle, 1e-10); }
  }
}

TEST(MetricsTest, SpearmanEqualsClosedFormWithoutTies) {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(UniformIndex(rng, 60));
    const V y = RandomVector(rng, n);
    const V p = RandomVector(rng, n);
    EXPECT_NEAR(*Spearman(y, p), oracle::SpearmanClosedForm(y, p), 1e-10);
  }
}

TEST(MetricsTest, BoundsHold) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(UniformIndex(rng, 30));
    const V y = RandomVector(rng, n);
    const V p = RandomVector(rng, n);
    EXPECT_GE(MeanAbsoluteError(y, p), 0.0);
    EXPECT_LE(RSquared(y, p), 1.0);
    EXPECT_LE(std::fabs(*Pearson(y, p)), 1.0 + 1e-12);
    EXPECT_LE(std::fabs(*Spearman(y, p)), 1.0 + 1e-12);
  }
}

TEST(MetricsTest, EvaluateLeavesConstantTargetUndefined) {
  const MetricsReport r = Evaluate(V{3, 3, 3}, V{1, 2, 3});
  EXPECT_DOUBLE_EQ(r.mae, 1.0);
  EXPECT_FALSE(r.r2.has_value());
  EXPECT_FALSE(r.pearson.has_value());
  EXPECT_EQ(r.n, 3);
}

}  // namespace
}  // namespace artpref::metrics
