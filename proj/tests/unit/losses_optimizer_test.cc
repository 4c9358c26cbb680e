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

#include <cmath>
#include <vector>

#include "artpref/error.h"
#include "artpref/nn/encoder.h"
#include "artpref/nn/losses.h"
#include "artpref/nn/optimizer.h"
#include "artpref/random.h"
#include "gtest/gtest.h"
#include "oracles/oracles.h"

namespace artpref::nn {
namespace {

Eigen::VectorXd Vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) out(k++) = x;
  return out;
}

TEST(MaeLossTest, Examples) {
  EXPECT_DOUBLE_EQ(MaeLoss(Vec({1, 3}), Vec({0, 2})), 1.0);
  EXPECT_EQ(MaeLoss(Vec({1, 2, 3}), Vec({1, 2, 3})), 0.0);
  EXPECT_DOUBLE_EQ(MaeLoss(Vec({1.5, 1.5, 4}), Vec({1, 2, 3})), 2.0 / 3.0);
}

TEST(MaeLossTest, GradientIsSignOverN) {
  const auto r = MaeLossWithGradient(Vec({1.5, 1.5, 4, 2}), Vec({1, 2, 3, 2}));
  EXPECT_DOUBLE_EQ(r.loss, 2.0 / 4.0);
  EXPECT_EQ(r.gradient, Vec({0.25, -0.25, 0.25, 0.0}));
}

TEST(MaeLossTest, Errors) {
  try {
    MaeLoss(Vec({1}), Vec({1, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
  try {
    MaeLoss(Eigen::VectorXd(), Eigen::VectorXd());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
}

TEST(HingeLossTest, Examples) {
  EXPECT_EQ(HingeLoss(+1, 1.5), 0.0);
  EXPECT_DOUBLE_EQ(HingeLoss(+1, 0.2), 0.8);
  EXPECT_DOUBLE_EQ(HingeLoss(-1, 0.5), 1.5);
  EXPECT_EQ(HingeGradient(+1, 1.5), 0.0);
  EXPECT_EQ(HingeGradient(+1, 0.2), -1.0);
  EXPECT_EQ(HingeGradient(-1, 0.5), 1.0);
}

TEST(HingeLossTest, NonNegativeAndZeroPastMargin) {
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const int label = UniformUnit(rng) < 0.5 ? 1 : -1;
    const double c = UniformReal(rng, -3, 3);
    EXPECT_GE(HingeLoss(label, c), 0.0);
    if (label * c >= 1.0) { EXPECT_EQ(HingeLoss(label, c), 0.0); }
  }
}

TEST(HingeLossTest, InvalidLabel) {
  try {
    HingeLoss(0, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidLabel);
  }
}

TEST(HingeLossTest, BatchMeanAndGradient) {
  Eigen::VectorXi labels(3);
  labels << 1, -1, 1;
  const auto r = MeanHingeLossWithGradient(labels, Vec({0.2, 0.5, 2.0}));
  EXPECT_DOUBLE_EQ(r.loss, (0.8 + 1.5 + 0.0) / 3.0);
  EXPECT_EQ(r.gradient, Vec({-1.0 / 3, 1.0 / 3, 0.0}));
}

struct FlatParams {
  std::vector<Eigen::ArrayXd> storage;
  std::vector<Eigen::Map<Eigen::ArrayXd>> maps;
  std::vector<Eigen::Map<const Eigen::ArrayXd>> const_maps;
};

void Remap(FlatParams& p) {
  p.maps.clear();
  p.const_maps.clear();
  for (auto& a : p.storage) {
    p.maps.emplace_back(a.data(), a.size());
    p.const_maps.emplace_back(a.data(), a.size());
  }
}

TEST(AdamTest, FirstStepMovesByLearningRate) {
  FlatParams params{{Eigen::ArrayXd::Constant(1, 0.5)}, {}, {}};
  FlatParams grads{{Eigen::ArrayXd::Constant(1, 2.0)}, {}, {}};
  Remap(params);
  Remap(grads);
  AdamState state;
  AdamStep(state, params.maps, grads.const_maps);
  EXPECT_NEAR(params.storage[0](0) - 0.5, -0.001, 1e-6);
}

TEST(AdamTest, ZeroGradientIsZeroUpdate) {
  FlatParams params{{Eigen::ArrayXd::Constant(3, 0.5)}, {}, {}};
  FlatParams grads{{Eigen::ArrayXd::Zero(3)}, {}, {}};
  Remap(params);
  Remap(grads);
  AdamState state;
  AdamStep(state, params.maps, grads.const_maps);
  EXPECT_TRUE((params.storage[0] == 0.5).all());
}

TEST(AdamTest, MatchesScalarOracle) {
  Rng rng(3);
  FlatParams params, grads;
  for (int size : {4, 1, 7}) {
    Eigen::ArrayXd p(size), g(size);
    for (int k = 0; k < size; ++k) p(k) = StandardNormal(rng);
    params.storage.push_back(p);
    grads.storage.push_back(g);
  }
  Remap(params);
  Remap(grads);
  std::vector<double> flat;
  for (const auto& a : params.storage) flat.insert(flat.end(), a.begin(), a.end());
  oracle::AdamScalarState oracle_state;
  AdamState state;
  state.learning_rate = 0.01;
  for (int step = 0; step < 5; ++step) {
    std::vector<double> flat_grad;
    for (auto& g : grads.storage) {
      for (Eigen::Index k = 0; k < g.size(); ++k) {
        g(k) = step < 2 ? 1.5 : StandardNormal(rng);
        flat_grad.push_back(g(k));
      }
    }
    AdamStep(state, params.maps, grads.const_maps);
    oracle::AdamStep(flat, flat_grad, oracle_state, 0.01);
    size_t k = 0;
    for (const auto& a : params.storage) {
      for (double v : a) EXPECT_NEAR(v, flat[k++], 1e-12);
    }
  }
  EXPECT_EQ(state.step_count, 5);
}

TEST(AdamTest, ShapeMismatch) {
  FlatParams params{{Eigen::ArrayXd::Zero(3)}, {}, {}};
  FlatParams grads{{Eigen::ArrayXd::Zero(2)}, {}, {}};
  Remap(params);
  Remap(grads);
  AdamState state;
  try {
    AdamStep(state, params.maps, grads.const_maps);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

TEST(AdamTest, ModelStepBumpsVersion) {
  EncoderModel m = EncoderModel::Create(EncoderConfig::WithWidths(3, {2}), 1);
  const uint64_t v = m.version();
  AdamState state;
  Gradients g = Gradients::ZerosLike(m);
  g.dense[0].weights.setOnes();
  const Eigen::MatrixXd before = m.dense()[0].weights;
  AdamStep(state, m, g);
  EXPECT_EQ(m.version(), v + 1);
  EXPECT_TRUE(((m.dense()[0].weights - before).array() < 0).all());
  EXPECT_EQ(m.dense()[1].weights, EncoderModel::Create(
      EncoderConfig::WithWidths(3, {2}), 1).dense()[1].weights);
}

TEST(PlateauTest, ConstantLossReducesAtEpoch101) {
  PlateauScheduler s;
  double lr = 1e-3;
  int first_reduction = 0;
  for (int epoch = 1; epoch <= 150; ++epoch) {
    const double next = s.Update(0.5, lr);
    if (next < lr && first_reduction == 0) {
      first_reduction = epoch;
      EXPECT_DOUBLE_EQ(next, 3e-4);
    }
    lr = next;
  }
  EXPECT_EQ(first_reduction, 101);
}

TEST(PlateauTest, ImprovingLossKeepsRate) {
  PlateauScheduler s;
  double lr = 1e-3;
  for (int epoch = 1; epoch <= 300; ++epoch) lr = s.Update(1.0 / epoch, lr);
  EXPECT_EQ(lr, 1e-3);
}

TEST(PlateauTest, FloorAtMinimum) {
  PlateauScheduler s;
  double lr = 1e-6;
  for (int epoch = 1; epoch <= 500; ++epoch) lr = s.Update(0.5, lr);
  EXPECT_EQ(lr, 1e-6);
}

TEST(PlateauTest, RateIsMonotoneAndBounded) {
  Rng rng(9);
  PlateauScheduler s;
  double lr = 1e-3;
  for (int epoch = 1; epoch <= 2000; ++epoch) {
    const double next = s.Update(UniformUnit(rng) + 1.0 / epoch, lr);
    EXPECT_LE(next, lr);
    EXPECT_GE(next, 1e-6);
    lr = next;
  }
}

}  // namespace
}  // namespace artpref::nn
