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
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "multiie/error.h"
#include "multiie/match_loss.h"
#include "support/oracles.h"

namespace multiie {
namespace {

TEST(PairwiseCost, ZeroGoldCostsNothing) {
  Rng rng(1);
  const PointerGrid pred = oracle::RandomProbabilities(4, 3, rng);
  const PointerGrid gold{Matrix(4, 3), Matrix(4, 3)};
  EXPECT_EQ(PairwiseCost(pred, gold), 0.0);
}

TEST(PairwiseCost, SingleAgreementIsMinusOne) {
  PointerGrid g{Matrix(3, 2), Matrix(3, 2)};
  g.ends(1, 1) = 1.0;
  EXPECT_EQ(PairwiseCost(g, g), -1.0);
  MatchOptions raw;
  raw.negate_cost = false;
  EXPECT_EQ(PairwiseCost(g, g, raw), 1.0);
}

TEST(PairwiseCost, MatchesElementwiseSum) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const PointerGrid p = oracle::RandomProbabilities(5, 2, rng);
    const PointerGrid g = oracle::RandomIndicators(5, 2, rng, 0.3);
    double sum = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        sum += p.starts(i, j) * g.starts(i, j) + p.ends(i, j) * g.ends(i, j);
      }
    }
    EXPECT_NEAR(PairwiseCost(p, g), -sum, 1e-13);
  }
}

TEST(PairwiseCost, ShapeMismatchThrows) {
  EXPECT_THROW(PairwiseCost({Matrix(2, 2), Matrix(2, 2)}, {Matrix(3, 2), Matrix(3, 2)}),
               ShapeError);
}

TEST(Hungarian, IdentityFavoring) {
  const Assignment a = Hungarian(Matrix::FromRows({{0, 9}, {9, 0}}));
  EXPECT_EQ(a.permutation, (Permutation{0, 1}));
  EXPECT_EQ(a.cost, 0.0);
}

TEST(Hungarian, TwoByTwo) {
  const Assignment a = Hungarian(Matrix::FromRows({{1, 2}, {3, 0}}));
  EXPECT_EQ(a.permutation, (Permutation{0, 1}));
  EXPECT_EQ(a.cost, 1.0);
}

TEST(Hungarian, EmptyAndSingle) {
  EXPECT_TRUE(Hungarian(Matrix()).permutation.empty());
  EXPECT_EQ(Hungarian(Matrix::FromRows({{-4}})).cost, -4.0);
}

TEST(Hungarian, RejectsBadInput) {
  EXPECT_THROW(Hungarian(Matrix(2, 3)), ArgumentError);
  Matrix c(2, 2);
  c(0, 1) = std::nan("");
  EXPECT_THROW(Hungarian(c), ArgumentError);
}

TEST(Hungarian, MatchesBruteForce) {
  Rng rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  for (std::size_t m = 1; m <= 6; ++m) {
    for (int trial = 0; trial < 200; ++trial) {
      Matrix c(m, m);
      for (double& v : c.data()) v = u(rng);
      const Assignment a = Hungarian(c);
      double total = 0.0;
      for (std::size_t i = 0; i < m; ++i) total += c(i, a.permutation[i]);
      EXPECT_EQ(a.cost, total);
      EXPECT_EQ(total, oracle::BruteForceMinAssignment(c));
    }
  }
}

// With heavy ties the result is the first optimal permutation in
// lexicographic order, found here by enumeration.
TEST(Hungarian, TiesBreakLexicographically) {
  Rng rng(4);
  std::uniform_int_distribution<int> small(0, 2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 2 + trial % 4;
    Matrix c(m, m);
    for (double& v : c.data()) v = small(rng);
    const double best = oracle::BruteForceMinAssignment(c);
    Permutation perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    Permutation first;
    do {
      double total = 0.0;
      for (std::size_t i = 0; i < m; ++i) total += c(i, perm[i]);
      if (total == best) {
        first = perm;
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(Hungarian(c).permutation, first);
  }
}

TEST(MaxScoreAssignment, MatchesBruteForceOnRectangles) {
  Rng rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + trial % 5, cols = 1 + (trial / 5) % 5;
    Matrix s(rows, cols);
    for (double& v : s.data()) v = u(rng) < 0.3 ? 0.0 : u(rng);
    const auto assignment = MaxScoreAssignment(s);
    double total = 0.0;
    std::vector<bool> used(cols, false);
    for (std::size_t i = 0; i < rows; ++i) {
      if (assignment[i] < 0) continue;
      const auto c = static_cast<std::size_t>(assignment[i]);
      EXPECT_FALSE(used[c]);
      used[c] = true;
      total += s(i, c);
    }
    EXPECT_NEAR(total, oracle::BruteForceMaxInjection(s), 1e-12);
  }
}

LabelTensor RandomGold(std::size_t m, std::size_t l, std::size_t r, Rng& rng) {
  std::vector<PointerGrid> slices;
  for (std::size_t i = 0; i < m; ++i) slices.push_back(oracle::RandomIndicators(l, r, rng, 0.2));
  return LabelTensor(std::move(slices));
}

LabelTensor RandomPred(std::size_t m, std::size_t l, std::size_t r, Rng& rng) {
  std::vector<PointerGrid> slices;
  for (std::size_t i = 0; i < m; ++i) slices.push_back(oracle::RandomProbabilities(l, r, rng));
  return LabelTensor(std::move(slices));
}

TEST(MatchingLoss, RecoversAppliedPermutation) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 2 + trial % 4;
    LabelTensor gold = RandomGold(m, 6, 2, rng);
    // Make every gold event distinct.
    for (std::size_t i = 0; i < m; ++i) gold.at(i, i, 0, 0) = 1.0;
    Permutation order(m);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    LabelTensor pred = gold.Permuted(order);
    for (std::size_t e = 0; e < m; ++e) {
      for (double& v : pred.slice(e).starts.data()) v = v > 0 ? 1.0 - 1e-13 : 1e-13;
      for (double& v : pred.slice(e).ends.data()) v = v > 0 ? 1.0 - 1e-13 : 1e-13;
    }
    const MatchLossResult r = MatchingLoss(pred, gold);
    EXPECT_LT(r.loss, 1e-11);
    for (std::size_t k = 0; k < m; ++k) EXPECT_EQ(r.permutation[order[k]], k);
  }
}

TEST(MatchingLoss, SingleEventIsBce) {
  Rng rng(7);
  const LabelTensor pred = RandomPred(1, 5, 3, rng);
  const LabelTensor gold = RandomGold(1, 5, 3, rng);
  const MatchLossResult r = MatchingLoss(pred, gold);
  const BceResult b = BceLoss(pred.slice(0), gold.slice(0));
  EXPECT_EQ(r.loss, b.loss);
  EXPECT_EQ(r.grad[0], b.grad);
}

TEST(MatchingLoss, GoldOrderDoesNotMatter) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + trial % 5;
    const LabelTensor pred = RandomPred(m, 4, 2, rng);
    const LabelTensor gold = RandomGold(m, 4, 2, rng);
    Permutation order(m);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const MatchLossResult a = MatchingLoss(pred, gold);
    const MatchLossResult b = MatchingLoss(pred, gold.Permuted(order));
    EXPECT_LT(std::abs(a.loss - b.loss), 1e-12);
  }
}

TEST(MatchingLoss, BoundedByBruteForcePermutations) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + trial % 5;
    const LabelTensor pred = RandomPred(m, 3, 2, rng);
    const LabelTensor gold = RandomGold(m, 3, 2, rng);
    Permutation perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    double lo = 1e300, hi = -1e300;
    do {
      double total = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        total += oracle::DirectBce(pred.slice(perm[i]), gold.slice(i));
      }
      lo = std::min(lo, total / static_cast<double>(m));
      hi = std::max(hi, total / static_cast<double>(m));
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double loss = MatchingLoss(pred, gold).loss;
    EXPECT_GE(loss, lo - 1e-12);
    EXPECT_LE(loss, hi + 1e-12);
  }
}

TEST(MatchingLoss, WithoutMatchingUsesIdentity) {
  Rng rng(10);
  const LabelTensor pred = RandomPred(3, 4, 2, rng);
  const LabelTensor gold = RandomGold(3, 4, 2, rng);
  MatchOptions off;
  off.use_matching = false;
  const MatchLossResult r = MatchingLoss(pred, gold, off);
  EXPECT_EQ(r.permutation, (Permutation{0, 1, 2}));
  double total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) total += oracle::DirectBce(pred.slice(i), gold.slice(i));
  EXPECT_NEAR(r.loss, total / 3.0, 1e-14);
}

TEST(MatchingLoss, RawCostAntiMatches) {
  PointerGrid a{Matrix(2, 1), Matrix(2, 1)}, b = a;
  a.starts(0, 0) = a.ends(0, 0) = 1.0;
  b.starts(1, 0) = b.ends(1, 0) = 1.0;
  const LabelTensor gold({a, b});
  LabelTensor pred({a, b});
  for (std::size_t e = 0; e < 2; ++e) {
    for (double& v : pred.slice(e).starts.data()) v = v > 0 ? 0.9 : 0.1;
    for (double& v : pred.slice(e).ends.data()) v = v > 0 ? 0.9 : 0.1;
  }
  EXPECT_EQ(MatchingLoss(pred, gold).permutation, (Permutation{0, 1}));
  MatchOptions raw;
  raw.negate_cost = false;
  EXPECT_EQ(MatchingLoss(pred, gold, raw).permutation, (Permutation{1, 0}));
}

TEST(MatchingLoss, LogitGradientMatchesFiniteDifferences) {
  Rng rng(11);
  const std::size_t m = 3, l = 4, r = 2;
  const LabelTensor gold = RandomGold(m, l, r, rng);
  std::vector<PointerGrid> logits;
  for (std::size_t i = 0; i < m; ++i) {
    logits.push_back({oracle::RandomMatrix(l, r, rng, 2.0), oracle::RandomMatrix(l, r, rng, 2.0)});
  }
  auto loss_of = [&](const std::vector<PointerGrid>& z) {
    std::vector<PointerGrid> probs;
    for (const auto& g : z) probs.push_back(SigmoidGrid(g));
    return MatchingLoss(LabelTensor(std::move(probs)), gold);
  };
  const MatchLossResult base = loss_of(logits);
  for (std::size_t i = 0; i < m; ++i) {
    auto starts = [&](const Matrix& x) {
      auto z = logits;
      z[i].starts = x;
      return loss_of(z).loss;
    };
    auto ends = [&](const Matrix& x) {
      auto z = logits;
      z[i].ends = x;
      return loss_of(z).loss;
    };
    EXPECT_LT(oracle::CheckInputGradient(logits[i].starts, base.grad[i].starts, starts), 1e-4);
    EXPECT_LT(oracle::CheckInputGradient(logits[i].ends, base.grad[i].ends, ends), 1e-4);
  }
}

TEST(LabelTensor, IndexingAndPermutation) {
  LabelTensor t(3, 2, 2);
  t.at(2, 1, 1, 0) = 1.0;
  EXPECT_EQ(t.slice(2).ends(1, 0), 1.0);
  const LabelTensor p = t.Permuted({2, 0, 1});
  EXPECT_EQ(p.at(0, 1, 1, 0), 1.0);
  EXPECT_THROW(LabelTensor({PointerGrid{Matrix(2, 2), Matrix(2, 2)},
                            PointerGrid{Matrix(3, 2), Matrix(3, 2)}}),
               ShapeError);
}

}  // namespace
}  // namespace multiie
