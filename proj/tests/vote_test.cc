// Copyright 2026 The MultiIE Authors.
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

#include <algorithm>
#include <map>

#include <gtest/gtest.h>

#include "multiie/error.h"
#include "multiie/vote.h"
#include "support/oracles.h"

namespace multiie {
namespace {

PredictionSet Set(std::string id, std::set<std::string> items) {
  return {std::move(id), std::move(items)};
}

std::vector<std::string> Sorted(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

TEST(Vote, SingleSetIsIdentity) {
  const std::vector sets = {Set("a", {"x", "y"})};
  EXPECT_EQ(Vote(sets, 1), (std::vector<std::string>{"x", "y"}));
}

TEST(Vote, CountsVotes) {
  const std::vector sets = {Set("a", {"x", "y"}), Set("b", {"x"}), Set("c", {})};
  EXPECT_EQ(Vote(sets, 2), std::vector<std::string>{"x"});
}

TEST(Vote, UnanimousSetsReturnThemselves) {
  const std::vector sets = {Set("a", {"p", "q"}), Set("b", {"p", "q"}), Set("c", {"p", "q"})};
  for (std::size_t t = 1; t <= 3; ++t) EXPECT_EQ(Vote(sets, t), (std::vector<std::string>{"p", "q"}));
}

TEST(Vote, RejectsBadThreshold) {
  const std::vector sets = {Set("a", {"x"}), Set("b", {"x"})};
  EXPECT_THROW(Vote(sets, 0), ArgumentError);
  EXPECT_THROW(Vote(sets, 3), ArgumentError);
  EXPECT_THROW(Vote(std::vector<PredictionSet>{}, 1), ArgumentError);
}

TEST(Vote, MajorityThreshold) {
  EXPECT_EQ(MajorityThreshold(1), 1u);
  EXPECT_EQ(MajorityThreshold(2), 2u);
  EXPECT_EQ(MajorityThreshold(3), 2u);
  EXPECT_EQ(MajorityThreshold(4), 3u);
  EXPECT_EQ(MajorityThreshold(5), 3u);
}

TEST(WeightedVote, UnitWeightsReduceToVote) {
  const std::vector sets = {Set("a", {"x", "y"}), Set("b", {"x", "z"}), Set("c", {"x", "y"})};
  const std::vector<double> w = {1, 1, 1};
  for (std::size_t t = 1; t <= 3; ++t) {
    EXPECT_EQ(WeightedVote(sets, w, static_cast<double>(t)), Vote(sets, t));
  }
}

TEST(WeightedVote, HeavySetCarriesRecord) {
  const std::vector sets = {Set("a", {"x"}), Set("b", {}), Set("c", {})};
  EXPECT_EQ(WeightedVote(sets, std::vector<double>{2, 1, 1}, 2.0), std::vector<std::string>{"x"});
}

TEST(WeightedVote, ZeroWeightsKeepNothing) {
  const std::vector sets = {Set("a", {"x"}), Set("b", {"x"}), Set("c", {"y"})};
  EXPECT_TRUE(WeightedVote(sets, std::vector<double>{0, 0, 0}, 0.5).empty());
}

TEST(WeightedVote, RejectsBadWeights) {
  const std::vector sets = {Set("a", {"x"})};
  EXPECT_THROW(WeightedVote(sets, std::vector<double>{-1}, 1.0), ArgumentError);
  EXPECT_THROW(WeightedVote(sets, std::vector<double>{1, 1}, 1.0), ArgumentError);
}

TEST(Vote, AlgebraOnRandomFamilies) {
  Rng rng(31);
  std::uniform_int_distribution<int> k_dist(1, 6), item(0, 15);
  for (int family = 0; family < 200; ++family) {
    const int k = k_dist(rng);
    std::vector<PredictionSet> sets;
    std::map<std::string, int> counts;
    for (int i = 0; i < k; ++i) {
      PredictionSet s{"m" + std::to_string(i), {}};
      for (int n = item(rng); n > 0; --n) s.items.insert("r" + std::to_string(item(rng)));
      for (const auto& x : s.items) ++counts[x];
      sets.push_back(std::move(s));
    }
    std::set<std::string> union_set, inter = sets[0].items;
    for (const auto& s : sets) {
      union_set.insert(s.items.begin(), s.items.end());
      std::set<std::string> next;
      std::set_intersection(inter.begin(), inter.end(), s.items.begin(), s.items.end(),
                            std::inserter(next, next.end()));
      inter = next;
    }
    EXPECT_EQ(Vote(sets, 1), Sorted(union_set));
    EXPECT_EQ(Vote(sets, k), Sorted(inter));
    std::vector<PredictionSet> reversed(sets.rbegin(), sets.rend());
    for (int t = 1; t <= k; ++t) {
      const auto kept = Vote(sets, t);
      std::vector<std::string> want;
      for (const auto& [x, c] : counts) {
        if (c >= t) want.push_back(x);
      }
      EXPECT_EQ(kept, want);
      EXPECT_EQ(Vote(reversed, t), kept);
      if (t > 1) {
        const auto looser = Vote(sets, t - 1);
        EXPECT_TRUE(std::includes(looser.begin(), looser.end(), kept.begin(), kept.end()));
      }
    }
  }
}

}  // namespace
}  // namespace multiie
