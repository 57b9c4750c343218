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
#include "multiie/metrics.h"
#include "support/oracles.h"

namespace multiie {
namespace {

Relation Rel(std::string s, std::string p, std::vector<std::pair<std::string, std::string>> slots) {
  Relation r{std::move(s), "T", std::move(p), {}};
  for (auto& [k, v] : slots) r.object.push_back({k, v, "T"});
  return r;
}

Event Ev(std::string type, std::vector<std::pair<std::string, std::string>> args) {
  Event e{std::move(type), {}, std::nullopt};
  for (auto& [role, text] : args) e.arguments.push_back({role, {text}});
  return e;
}

TEST(ReF1, IdenticalIsPerfect) {
  const std::vector<Relation> gold = {Rel("a", "p", {{"@value", "b"}}),
                                      Rel("c", "q", {{"@value", "d"}, {"inWork", "w"}})};
  EXPECT_EQ(ReF1(gold, gold).f1, 1.0);
}

// Only predictions collapse; a repeated gold relation still needs two hits.
TEST(ReF1, GoldDuplicatesStayCounted) {
  const std::vector<Relation> gold = {Rel("a", "p", {{"@value", "b"}}),
                                      Rel("a", "p", {{"@value", "b"}})};
  const Prf p = ReF1(gold, gold);
  EXPECT_EQ(p.predicted, 1u);
  EXPECT_EQ(p.gold, 2u);
  EXPECT_EQ(p.precision, 1.0);
  EXPECT_EQ(p.recall, 0.5);
}

TEST(ReF1, AllSlotsMustMatch) {
  const std::vector<Relation> gold = {Rel("E", "play", {{"@value", "R"}, {"inWork", "W"}})};
  const std::vector<Relation> pred = {Rel("E", "play", {{"@value", "R"}, {"inWork", "X"}})};
  const Prf p = ReF1(pred, gold);
  EXPECT_EQ(p.matched, 0.0);
  EXPECT_EQ(p.f1, 0.0);
  const std::vector<Relation> missing = {Rel("E", "play", {{"@value", "R"}})};
  EXPECT_EQ(ReF1(missing, gold).f1, 0.0);
}

TEST(ReF1, SlotOrderIsIrrelevant) {
  const std::vector<Relation> gold = {Rel("E", "play", {{"@value", "R"}, {"inWork", "W"}})};
  const std::vector<Relation> pred = {Rel("E", "play", {{"inWork", "W"}, {"@value", "R"}})};
  EXPECT_EQ(ReF1(pred, gold).f1, 1.0);
}

TEST(ReF1, Counting) {
  const std::vector<Relation> gold = {Rel("a", "p", {{"@value", "b"}}),
                                      Rel("c", "p", {{"@value", "d"}})};
  const std::vector<Relation> pred = {Rel("a", "p", {{"@value", "b"}}),
                                      Rel("c", "p", {{"@value", "x"}})};
  const Prf p = ReF1(pred, gold);
  EXPECT_EQ(p.precision, 0.5);
  EXPECT_EQ(p.recall, 0.5);
  EXPECT_EQ(p.f1, 0.5);
}

TEST(ReF1, DuplicatePredictionsCollapse) {
  const std::vector<Relation> gold = {Rel("a", "p", {{"@value", "b"}})};
  const std::vector<Relation> pred = {gold[0], gold[0]};
  EXPECT_EQ(ReF1(pred, gold).f1, 1.0);
}

TEST(CharF1, Examples) {
  EXPECT_EQ(CharF1("雀巢", "雀巢"), 1.0);
  EXPECT_DOUBLE_EQ(CharF1("ab", "abc"), 0.8);
  EXPECT_DOUBLE_EQ(CharF1("abc", "abcd"), 6.0 / 7.0);
  EXPECT_EQ(CharF1("", "a"), 0.0);
  EXPECT_EQ(CharF1("xy", "ab"), 0.0);
  EXPECT_EQ(CharF1("a b", "ab"), 1.0);
}

TEST(CharF1, MatchesCountingOracle) {
  Rng rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    const std::string a = oracle::RandomWord(rng, 0, 6), b = oracle::RandomWord(rng, 0, 6);
    EXPECT_NEAR(CharF1(a, b), oracle::CountingCharF1(a, b), 1e-15);
  }
}

TEST(SeeF1, BestMentionCounts) {
  Event gold{"E", {{"role", {"ab", "abcd"}}}, std::nullopt};
  const std::vector<Event> pred = {Ev("E", {{"role", "abc"}})};
  const Prf p = SeeF1(pred, std::vector<Event>{gold});
  EXPECT_DOUBLE_EQ(p.matched, std::max(0.8, 6.0 / 7.0));
}

TEST(SeeF1, IdenticalIsPerfect) {
  const std::vector<Event> e = {Ev("A", {{"x", "甲乙"}, {"y", "丙"}}), Ev("B", {{"x", "丁"}})};
  EXPECT_EQ(SeeF1(e, e).f1, 1.0);
}

TEST(DeeF1, SingleEventAllArgumentsCorrect) {
  const std::vector<Event> e = {Ev("Pledge", {{"pledger", "A"}, {"pledgee", "B"}})};
  EXPECT_EQ(DeeF1(e, e).f1, 1.0);
}

// Two "be interviewed" events with crossed time arguments. The first gold
// event would greedily take the first prediction and leave the second gold
// event with nothing; the optimal pairing finds two correct arguments.
TEST(DeeF1, InterviewScenarioPicksBetterPairing) {
  const std::vector<Event> gold = {Ev("Interview", {{"person", "A"}, {"time", "T1"}}),
                                   Ev("Interview", {{"person", "B"}, {"time", "T2"}})};
  const std::vector<Event> pred = {Ev("Interview", {{"person", "A"}, {"time", "T2"}}),
                                   Ev("Interview", {{"person", "X"}, {"time", "T1"}})};
  Matrix hits(2, 2);
  for (std::size_t g = 0; g < 2; ++g) {
    for (std::size_t p = 0; p < 2; ++p) hits(g, p) = static_cast<double>(CorrectArguments(pred[p], gold[g]));
  }
  const double best = std::max(hits(0, 0) + hits(1, 1), hits(0, 1) + hits(1, 0));
  EXPECT_EQ(best, 2.0);
  EXPECT_EQ(DeeF1(pred, gold).matched, best);
  EXPECT_EQ(DeeF1(pred, gold, MatchStrategy::kGreedy).matched, 1.0);
}

TEST(DeeF1, WrongEventTypeMatchesNothing) {
  const std::vector<Event> gold = {Ev("Pledge", {{"pledger", "A"}})};
  const std::vector<Event> pred = {Ev("Repurchase", {{"pledger", "A"}})};
  EXPECT_EQ(DeeF1(pred, gold).matched, 0.0);
  EXPECT_EQ(CorrectArguments(pred[0], gold[0]), 0u);
}

TEST(DeeF1, DuplicatePredictionsCollapse) {
  const std::vector<Event> gold = {Ev("P", {{"a", "x"}, {"b", "y"}})};
  std::vector<Event> pred = {gold[0], Ev("P", {{"b", "y"}, {"a", "x"}})};
  pred[1].trigger = "t";
  const Prf p = DeeF1(pred, gold);
  EXPECT_EQ(p.predicted, 2u);
  EXPECT_EQ(p.f1, 1.0);
}

TEST(MacroAverage, Values) {
  EXPECT_EQ(MacroAverage(1.0, 1.0, 1.0), 1.0);
  EXPECT_EQ(MacroAverage(0.0, 0.0, 0.0), 0.0);
  EXPECT_NEAR(MacroAverage(0.79887, 0.85179, 0.70828), 0.786313333333, 1e-12);
  EXPECT_THROW(MacroAverage(std::nullopt, 1.0, 1.0), ArgumentError);
  EXPECT_THROW(MacroAverage(1.0, 1.0, std::nullopt), ArgumentError);
}

TEST(MakePrf, EmptySides) {
  EXPECT_EQ(MakePrf(0, 0, 3).f1, 0.0);
  EXPECT_EQ(MakePrf(0, 3, 0).f1, 0.0);
  EXPECT_EQ(MakePrf(0, 0, 0).f1, 0.0);
}

TEST(Metrics, AssignmentsMatchBruteForce) {
  Rng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pred = oracle::RandomEvents(rng, 5), gold = oracle::RandomEvents(rng, 5);
    EXPECT_NEAR(DeeF1(pred, gold).matched, oracle::DeeMatched(pred, gold), 1e-12);
    EXPECT_NEAR(SeeF1(pred, gold).matched, oracle::SeeMatched(pred, gold), 1e-12);
  }
}

TEST(Metrics, SymmetricUnderReorderingAndBounded) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto pred = oracle::RandomEvents(rng, 5), gold = oracle::RandomEvents(rng, 5);
    const Prf d = DeeF1(pred, gold), s = SeeF1(pred, gold);
    std::shuffle(pred.begin(), pred.end(), rng);
    std::shuffle(gold.begin(), gold.end(), rng);
    EXPECT_NEAR(DeeF1(pred, gold).f1, d.f1, 1e-12);
    EXPECT_NEAR(SeeF1(pred, gold).f1, s.f1, 1e-12);
    for (const Prf& p : {d, s}) {
      EXPECT_GE(p.precision, 0.0);
      EXPECT_LE(p.precision, 1.0);
      EXPECT_GE(p.recall, 0.0);
      EXPECT_LE(p.recall, 1.0);
      EXPECT_GE(p.f1, 0.0);
      EXPECT_LE(p.f1, 1.0);
    }
    if (pred.empty() != gold.empty()) {
      EXPECT_EQ(d.f1, 0.0);
      EXPECT_EQ(s.f1, 0.0);
    }
  }
}

TEST(Metrics, DocumentsPairById) {
  const std::vector<EventDocument> gold = {{"d1", {Ev("A", {{"r", "x"}})}},
                                           {"d2", {Ev("A", {{"r", "y"}})}}};
  const std::vector<EventDocument> pred = {{"d2", {Ev("A", {{"r", "y"}})}},
                                           {"d1", {Ev("A", {{"r", "y"}})}}};
  const ScoreReport r = DeeF1(pred, gold);
  EXPECT_EQ(r.overall.matched, 1.0);
  EXPECT_EQ(r.per_type.at("A").gold, 2u);
  const std::vector<EventDocument> dup = {gold[0], gold[0]};
  EXPECT_THROW(DeeF1(dup, gold), DataError);
}

}  // namespace
}  // namespace multiie
