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

#include <cmath>
#include <set>
#include <tuple>

#include <gtest/gtest.h>

#include "multiie/error.h"
#include "multiie/params.h"
#include "multiie/pointer.h"
#include "support/oracles.h"

namespace multiie {
namespace {

TEST(Score, ZeroParamsGiveOneHalf) {
  Rng rng(1);
  const PointerGrid g = Score(oracle::RandomMatrix(4, 3, rng), PointerParams::Zeros(3, 2));
  for (double p : g.starts.data()) EXPECT_EQ(p, 0.5);
  for (double p : g.ends.data()) EXPECT_EQ(p, 0.5);
}

TEST(Score, ScalarCase) {
  PointerParams p = PointerParams::Zeros(1, 1);
  p.start_w(0, 0) = 1.0;
  p.end_w(0, 0) = 1.0;
  const PointerGrid g = Score(Matrix::FromRows({{2.0}}), p);
  const double want = static_cast<double>(1.0L / (1.0L + std::exp(-2.0L)));
  EXPECT_NEAR(g.starts(0, 0), want, 1e-15);
  EXPECT_NEAR(g.ends(0, 0), want, 1e-15);
}

TEST(Score, ShapeIsTokensByTypes) {
  Rng rng(2);
  for (std::size_t l : {1u, 3u, 7u}) {
    const PointerParams p = PointerParams::Random(5, 4, -2.0, rng);
    const PointerGrid g = Score(oracle::RandomMatrix(l, 5, rng), p);
    EXPECT_EQ(g.starts.rows(), l);
    EXPECT_EQ(g.starts.cols(), 4u);
    EXPECT_EQ(g.ends.rows(), l);
    EXPECT_EQ(g.ends.cols(), 4u);
  }
}

TEST(Score, ShapeMismatchThrows) {
  EXPECT_THROW(Score(Matrix(2, 3), PointerParams::Zeros(4, 1)), ShapeError);
}

PointerGrid Grid(std::size_t l, std::size_t r, double fill) {
  return {Matrix(l, r, fill), Matrix(l, r, fill)};
}

TEST(DecodeSpans, SingleSpan) {
  PointerGrid g = Grid(6, 1, 0.1);
  g.starts(2, 0) = 0.9;
  g.ends(4, 0) = 0.8;
  const auto spans = DecodeSpans(g);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].type, 0u);
  EXPECT_EQ(spans[0].start, 2u);
  EXPECT_EQ(spans[0].end, 4u);
  EXPECT_DOUBLE_EQ(spans[0].score, 0.8);
}

TEST(DecodeSpans, NothingFires) { EXPECT_TRUE(DecodeSpans(Grid(5, 3, 0.4), 0.5).empty()); }

TEST(DecodeSpans, TokenCanBelongToTwoTypes) {
  PointerGrid g = Grid(3, 2, 0.0);
  for (std::size_t t = 0; t < 2; ++t) g.starts(1, t) = g.ends(1, t) = 0.9;
  const auto spans = DecodeSpans(g);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(std::tie(spans[0].type, spans[0].start, spans[0].end),
            std::make_tuple(std::size_t{0}, std::size_t{1}, std::size_t{1}));
  EXPECT_EQ(std::tie(spans[1].type, spans[1].start, spans[1].end),
            std::make_tuple(std::size_t{1}, std::size_t{1}, std::size_t{1}));
}

TEST(DecodeSpans, EndsAreNotReused) {
  PointerGrid g = Grid(4, 1, 0.0);
  g.starts(0, 0) = g.starts(1, 0) = 0.9;
  g.ends(2, 0) = 0.9;
  const auto spans = DecodeSpans(g);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].start, 0u);
  EXPECT_EQ(spans[0].end, 2u);
}

PointerGrid RandomGrid(Rng& rng, std::size_t l, std::size_t r) {
  PointerGrid g = oracle::RandomProbabilities(l, r, rng);
  return g;
}

TEST(DecodeSpans, WellFormedAndUnique) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const PointerGrid g = RandomGrid(rng, 1 + trial % 9, 1 + trial % 3);
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    for (const auto& s : DecodeSpans(g, 0.5)) {
      EXPECT_LE(s.start, s.end);
      EXPECT_TRUE(seen.emplace(s.type, s.start, s.end).second);
    }
  }
}

// Raising the threshold only removes candidate starts and ends, so every
// surviving span is built from positions that fired at the lower threshold,
// and the per-type span count never grows.
TEST(DecodeSpans, MonotoneInThreshold) {
  Rng rng(4);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t l = 1 + trial % 10, r = 1 + trial % 3;
    const PointerGrid g = RandomGrid(rng, l, r);
    double lo = u(rng), hi = u(rng);
    if (lo > hi) std::swap(lo, hi);
    const auto low = DecodeSpans(g, lo);
    const auto high = DecodeSpans(g, hi);
    for (std::size_t t = 0; t < r; ++t) {
      auto count = [t](const std::vector<TypedSpan>& v) {
        return std::count_if(v.begin(), v.end(), [t](const TypedSpan& s) { return s.type == t; });
      };
      EXPECT_LE(count(high), count(low));
    }
    for (const auto& s : high) {
      EXPECT_GE(g.starts(s.start, s.type), lo);
      EXPECT_GE(g.ends(s.end, s.type), lo);
    }
  }
}

TEST(GoldGrid, MarksStartsAndEnds) {
  const PointerGrid g = GoldGrid(5, 2, {{1, 0, 2, 1.0}, {0, 3, 3, 1.0}});
  EXPECT_EQ(g.starts(0, 1), 1.0);
  EXPECT_EQ(g.ends(2, 1), 1.0);
  EXPECT_EQ(g.starts(3, 0), 1.0);
  EXPECT_EQ(g.ends(3, 0), 1.0);
  double total = 0.0;
  for (double v : g.starts.data()) total += v;
  for (double v : g.ends.data()) total += v;
  EXPECT_EQ(total, 4.0);
  EXPECT_THROW(GoldGrid(5, 2, {{2, 0, 0, 1.0}}), ArgumentError);
}

TEST(BceLoss, ConfidentPerfectPredictionIsNearZero) {
  const PointerGrid gold = GoldGrid(4, 2, {{0, 1, 2, 1.0}});
  PointerGrid probs = gold;
  for (double& v : probs.starts.data()) v = v > 0 ? 1.0 - 1e-13 : 1e-13;
  for (double& v : probs.ends.data()) v = v > 0 ? 1.0 - 1e-13 : 1e-13;
  EXPECT_LT(BceLoss(probs, gold).loss, 1e-11);
  EXPECT_GE(BceLoss(probs, gold).loss, 0.0);
}

TEST(BceLoss, HalfEverywhereIsLn2) {
  const PointerGrid gold = GoldGrid(3, 2, {{1, 0, 1, 1.0}});
  EXPECT_NEAR(BceLoss(Grid(3, 2, 0.5), gold).loss, std::log(2.0), 1e-15);
}

TEST(BceLoss, MatchesDirectSum) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const PointerGrid p = oracle::RandomProbabilities(4, 3, rng);
    const PointerGrid y = oracle::RandomIndicators(4, 3, rng, 0.3);
    const double got = BceLoss(p, y).loss;
    EXPECT_NEAR(got, oracle::DirectBce(p, y), 1e-14);
    EXPECT_GE(got, 0.0);
  }
}

TEST(BceLoss, RejectsSoftGold) {
  PointerGrid y = Grid(2, 1, 0.0);
  y.starts(0, 0) = 0.5;
  EXPECT_THROW(BceLoss(Grid(2, 1, 0.5), y), ArgumentError);
}

TEST(BceLoss, LogitGradientMatchesFiniteDifferences) {
  Rng rng(6);
  const PointerGrid logits{oracle::RandomMatrix(3, 2, rng, 2.0), oracle::RandomMatrix(3, 2, rng, 2.0)};
  const PointerGrid y = oracle::RandomIndicators(3, 2, rng, 0.4);
  const BceResult r = BceLoss(SigmoidGrid(logits), y);
  auto loss_at_starts = [&](const Matrix& s) {
    return BceLoss(SigmoidGrid({s, logits.ends}), y).loss;
  };
  auto loss_at_ends = [&](const Matrix& e) {
    return BceLoss(SigmoidGrid({logits.starts, e}), y).loss;
  };
  EXPECT_LT(oracle::CheckInputGradient(logits.starts, r.grad.starts, loss_at_starts, 1e-6), 1e-6);
  EXPECT_LT(oracle::CheckInputGradient(logits.ends, r.grad.ends, loss_at_ends, 1e-6), 1e-6);
}

TEST(PointerBackward, EndToEndMatchesFiniteDifferences) {
  Rng rng(7);
  const PointerParams p = PointerParams::Random(4, 3, -1.0, rng);
  const Matrix h = oracle::RandomMatrix(6, 4, rng);
  const PointerGrid y = GoldGrid(6, 3, {{0, 1, 3, 1.0}, {2, 4, 4, 1.0}});
  auto loss = [&](const Matrix& tokens, const PointerParams& q) {
    return BceLoss(Score(tokens, q), y).loss;
  };
  const BceResult r = BceLoss(Score(h, p), y);
  PointerParams grads = ZerosLike(p);
  const Matrix dh = PointerBackward(h, p, r.grad, grads);
  EXPECT_LT(oracle::CheckGradients(p, grads, [&](const PointerParams& q) { return loss(h, q); })
                .worst,
            1e-4);
  EXPECT_LT(oracle::CheckInputGradient(h, dh, [&](const Matrix& x) { return loss(x, p); }), 1e-4);
}

}  // namespace
}  // namespace multiie
