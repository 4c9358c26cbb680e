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

#include <map>
#include <set>

#include "artpref/error.h"
#include "artpref/harness/ratings.h"
#include "artpref/harness/split.h"
#include "artpref/random.h"
#include "gtest/gtest.h"
#include "oracles/oracles.h"
#include "support/support.h"

namespace artpref::harness {
namespace {

const TaskSpec kAbstractBeauty{Category::kAbstract, Dimension::kBeauty};

std::vector<RatingRow> FiveRaters(const std::vector<double>& beauty) {
  std::vector<RatingRow> rows;
  for (size_t r = 0; r < beauty.size(); ++r) {
    rows.push_back({"p1", Category::kAbstract, static_cast<int>(r + 1),
                    beauty[r], 5.0});
  }
  return rows;
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kRunFailed;
}

TEST(RatingsTest, LoadTwoItemsFiveRaters) {
  testing::TempDir dir;
  std::string text = "item_id,category,rater_id,beauty,liking\n";
  for (const char* item : {"a1", "a2"}) {
    for (int r = 1; r <= 5; ++r) {
      text += std::string(item) + ",abstract," + std::to_string(r) + ",7,3.5\n";
    }
  }
  testing::WriteFile(dir / "r.csv", text);
  const RatingsTable t = RatingsTable::Load(dir / "r.csv");
  EXPECT_EQ(t.rows().size(), 10u);
  EXPECT_EQ(t.Raters(), (std::vector<int>{1, 2, 3, 4, 5}));
  EXPECT_EQ(*t.Rating("a2", 3, Dimension::kLiking), 3.5);
  t.Save(dir / "copy.csv");
  EXPECT_EQ(RatingsTable::Load(dir / "copy.csv").rows().size(), 10u);
}

TEST(RatingsTest, Errors) {
  EXPECT_EQ(CodeOf([] { RatingsTable::FromRows(FiveRaters({1, 2, 11})); }),
            ErrorCode::kOutOfRangeRating);
  EXPECT_EQ(CodeOf([] {
              auto rows = FiveRaters({1, 2});
              rows.push_back(rows[0]);
              RatingsTable::FromRows(rows);
            }),
            ErrorCode::kDuplicateKey);
  EXPECT_EQ(CodeOf([] {
              auto rows = FiveRaters({1, 2, 3});
              rows.push_back({"p2", Category::kAbstract, 1, 4, 4});
              AverageTargets(RatingsTable::FromRows(rows), kAbstractBeauty);
            }),
            ErrorCode::kMissingRating);
  EXPECT_EQ(CodeOf([] { RatingsTable::Load("/nonexistent/ratings.csv"); }),
            ErrorCode::kIoFailure);
}

TEST(TargetsTest, AverageAndLeaveOneOutExamples) {
  const RatingsTable t = RatingsTable::FromRows(FiveRaters({2, 4, 6, 8, 10}));
  EXPECT_DOUBLE_EQ(AverageTargets(t, kAbstractBeauty).at("p1"), 6.0);
  EXPECT_DOUBLE_EQ(CrossRaterTargets(t, kAbstractBeauty, 5).at("p1"), 5.0);
  EXPECT_DOUBLE_EQ(CrossRaterTargets(t, kAbstractBeauty, 3).at("p1"), 6.0);
  EXPECT_DOUBLE_EQ(RaterTargets(t, kAbstractBeauty, 4).at("p1"), 8.0);
  const RatingsTable same = RatingsTable::FromRows(FiveRaters({3, 3, 3, 3, 3}));
  EXPECT_DOUBLE_EQ(AverageTargets(same, kAbstractBeauty).at("p1"), 3.0);
}

TEST(TargetsTest, RandomTablesMatchOracles) {
  const auto study = testing::MakeSyntheticStudy(40, 6, 4, 1.5, 3);
  const RatingsTable& t = study.table;
  for (int held : t.Raters()) {
    const Targets cross = CrossRaterTargets(t, kAbstractBeauty, held);
    const Targets avg = AverageTargets(t, kAbstractBeauty);
    for (const auto& item : t.Items(Category::kAbstract)) {
      std::map<int, double> by_rater;
      double sum = 0;
      for (int r : t.Raters()) {
        by_rater[r] = *t.Rating(item, r, Dimension::kBeauty);
        sum += by_rater[r];
      }
      EXPECT_NEAR(avg.at(item), sum / 6.0, 1e-12);
      EXPECT_NEAR(cross.at(item), oracle::LeaveOneOutMean(by_rater, held), 1e-12);
    }
  }
}

TEST(TargetsTest, CrossRaterNeedsTwoRaters) {
  const RatingsTable t = RatingsTable::FromRows(FiveRaters({4}));
  EXPECT_EQ(CodeOf([&] { CrossRaterTargets(t, kAbstractBeauty, 1); }),
            ErrorCode::kTooFewItems);
}

std::vector<std::string> Ids(int n) {
  std::vector<std::string> ids;
  for (int k = 0; k < n; ++k) ids.push_back("x" + std::to_string(1000 + k));
  return ids;
}

TEST(SplitTest, Sizes) {
  EXPECT_EQ(TrainSize(239), 140u);
  EXPECT_EQ(TrainSize(10), 6u);
  const SplitSpec s = MakeSplit(Ids(239), 1);
  EXPECT_EQ(s.train_ids.size(), 140u);
  EXPECT_EQ(s.test_ids.size(), 99u);
  const SplitSpec small = MakeSplit(Ids(10), 1);
  EXPECT_EQ(small.train_ids.size(), 6u);
  EXPECT_EQ(small.test_ids.size(), 4u);
}

TEST(SplitTest, DisjointCoveringAndDeterministic) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 5 + static_cast<int>(seed * 13 % 300);
    const SplitSpec s = MakeSplit(Ids(n), seed);
    std::set<std::string> all(s.train_ids.begin(), s.train_ids.end());
    for (const auto& id : s.test_ids) EXPECT_TRUE(all.insert(id).second);
    EXPECT_EQ(all.size(), static_cast<size_t>(n));
    EXPECT_EQ(s.train_ids.size(), TrainSize(n));
    const SplitSpec again = MakeSplit(Ids(n), seed);
    EXPECT_EQ(s.train_ids, again.train_ids);
  }
  EXPECT_NE(MakeSplit(Ids(50), 1).train_ids, MakeSplit(Ids(50), 2).train_ids);
  std::vector<std::string> shuffled = Ids(50);
  std::reverse(shuffled.begin(), shuffled.end());
  EXPECT_EQ(MakeSplit(shuffled, 4).train_ids, MakeSplit(Ids(50), 4).train_ids);
}

TEST(SplitTest, Errors) {
  EXPECT_EQ(CodeOf([] { MakeSplit(Ids(4), 1); }), ErrorCode::kTooFewItems);
  EXPECT_EQ(CodeOf([] { MakeSplit({"a", "b", "c", "d", "a"}, 1); }),
            ErrorCode::kDuplicateItem);
}

}  // namespace
}  // namespace artpref::harness
