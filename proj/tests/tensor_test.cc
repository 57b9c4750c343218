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
#include <numeric>

#include <gtest/gtest.h>

#include "multiie/attention.h"
#include "multiie/error.h"
#include "multiie/tensor.h"
#include "support/oracles.h"

namespace multiie {
namespace {

TEST(MatMul, IdentityLeavesMatrix) {
  const Matrix b = Matrix::FromRows({{1, 2}, {3, 4}});
  EXPECT_EQ(MatMul(Matrix::Identity(2), b), b);
}

TEST(MatMul, SelectorRow) {
  const Matrix out = MatMul(Matrix::FromRows({{1, 0}}), Matrix::FromRows({{5}, {7}}));
  EXPECT_EQ(out, Matrix::FromRows({{5}}));
}

TEST(MatMul, MatchesTripleLoop) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = oracle::RandomMatrix(3, 4, rng);
    const Matrix b = oracle::RandomMatrix(4, 2, rng);
    const Matrix got = MatMul(a, b);
    const Matrix want = oracle::NaiveMatMul(a, b);
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got.data()[i], want.data()[i], 1e-14);
  }
}

TEST(MatMul, TransposedVariantsAgree) {
  Rng rng(6);
  const Matrix a = oracle::RandomMatrix(4, 3, rng);
  const Matrix b = oracle::RandomMatrix(4, 5, rng);
  const Matrix c = oracle::RandomMatrix(5, 3, rng);
  const Matrix ta = MatMulTransA(a, b), wa = MatMul(Transpose(a), b);
  const Matrix tb = MatMulTransB(a, c), wb = MatMul(a, Transpose(c));
  for (std::size_t i = 0; i < ta.size(); ++i) EXPECT_NEAR(ta.data()[i], wa.data()[i], 1e-14);
  for (std::size_t i = 0; i < tb.size(); ++i) EXPECT_NEAR(tb.data()[i], wb.data()[i], 1e-14);
}

TEST(MatMul, ShapeMismatchThrows) {
  EXPECT_THROW(MatMul(Matrix(2, 3), Matrix(2, 3)), ShapeError);
}

TEST(MatMul, Associative) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = oracle::RandomMatrix(3, 4, rng);
    const Matrix b = oracle::RandomMatrix(4, 2, rng);
    const Matrix c = oracle::RandomMatrix(2, 5, rng);
    const Matrix left = MatMul(MatMul(a, b), c);
    const Matrix right = MatMul(a, MatMul(b, c));
    for (std::size_t i = 0; i < left.size(); ++i) {
      const double scale = std::max(1.0, std::abs(left.data()[i]));
      EXPECT_LE(std::abs(left.data()[i] - right.data()[i]) / scale, 1e-9);
    }
  }
}

TEST(Softmax, UniformOnEqualInputs) {
  for (double p : Softmax(std::vector<double>{0, 0, 0})) EXPECT_DOUBLE_EQ(p, 1.0 / 3.0);
}

TEST(Softmax, StableForLargeInputs) {
  const auto p = Softmax(std::vector<double>{1000, 0});
  EXPECT_TRUE(std::isfinite(p[0]) && std::isfinite(p[1]));
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  EXPECT_NEAR(p[1], 0.0, 1e-15);
}

TEST(Softmax, MatchesExtendedPrecision) {
  const auto p = Softmax(std::vector<double>{1, 2, 3});
  const long double z = std::exp(1.0L) + std::exp(2.0L) + std::exp(3.0L);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(p[i], static_cast<double>(std::exp(static_cast<long double>(i + 1)) / z), 1e-15);
  }
}

TEST(Softmax, EmptyThrows) { EXPECT_THROW(Softmax(std::vector<double>{}), ArgumentError); }

TEST(Softmax, SumsToOneAndPermutes) {
  Rng rng(8);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(1 + trial % 7);
    for (double& v : x) v = u(rng);
    const auto p = Softmax(x);
    EXPECT_LT(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0), 1e-12);
    std::vector<double> rev(x.rbegin(), x.rend());
    const auto q = Softmax(rev);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_DOUBLE_EQ(p[i], q[x.size() - 1 - i]);
  }
}

TEST(Softmax, BackwardMatchesFiniteDifferences) {
  Rng rng(9);
  const Matrix x = oracle::RandomMatrix(1, 5, rng, 2.0);
  const Matrix w = oracle::RandomMatrix(1, 5, rng);
  auto loss = [&](const Matrix& in) { return Dot(Softmax(in.row(0)), w.row(0)); };
  const auto dx = SoftmaxBackward(Softmax(x.row(0)), w.row(0));
  EXPECT_LT(oracle::CheckInputGradient(x, Matrix::RowVector(dx), loss), 1e-8);
}

TEST(Sigmoid, Values) {
  EXPECT_EQ(Sigmoid(0.0), 0.5);
  EXPECT_NEAR(Sigmoid(-800.0), 0.0, 1e-300);
  EXPECT_GE(Sigmoid(-800.0), 0.0);
  EXPECT_NEAR(Sigmoid(800.0), 1.0, 0.0);
  EXPECT_NEAR(Sigmoid(1.0), static_cast<double>(1.0L / (1.0L + std::exp(-1.0L))), 1e-16);
}

TEST(LayerNorm, BackwardMatchesFiniteDifferences) {
  Rng rng(10);
  const Matrix x = oracle::RandomMatrix(3, 6, rng);
  LayerNormParams p = LayerNormParams::Init(6);
  p.gain = oracle::RandomMatrix(1, 6, rng);
  p.bias = oracle::RandomMatrix(1, 6, rng);
  const Matrix w = oracle::RandomMatrix(3, 6, rng);
  auto objective = [&](const Matrix& in, const LayerNormParams& q) {
    const Matrix y = LayerNorm(in, q);
    return Dot(y.data(), w.data());
  };
  LayerNormCache cache;
  LayerNorm(x, p, &cache);
  LayerNormParams grads = ZerosLike(p);
  const Matrix dx = LayerNormBackward(cache, p, w, grads);
  EXPECT_LT(oracle::CheckInputGradient(x, dx, [&](const Matrix& in) { return objective(in, p); }),
            1e-7);
  EXPECT_LT(oracle::CheckGradients(p, grads,
                                   [&](const LayerNormParams& q) { return objective(x, q); })
                .worst,
            1e-7);
}

TEST(Tensor3, SliceRoundTrip) {
  Tensor3 t(2, 3, 4);
  Rng rng(1);
  const Matrix m = oracle::RandomMatrix(3, 4, rng);
  t.SetSlice(1, m);
  EXPECT_EQ(t.Slice(1), m);
  EXPECT_EQ(t.Slice(0), Matrix(3, 4));
  EXPECT_EQ(t(1, 2, 3), m(2, 3));
}

// Attention -----------------------------------------------------------------

TEST(Attention, SingleKeyReturnsItsValue) {
  const Matrix q = Matrix::FromRows({{0.3, -0.2}});
  const Matrix v = Matrix::FromRows({{1.5, -4.0}});
  const Matrix out = MultiHeadAttention(q, q, v, 1, AttentionParams::Identity(2));
  EXPECT_NEAR(out(0, 0), 1.5, 1e-15);
  EXPECT_NEAR(out(0, 1), -4.0, 1e-15);
}

TEST(Attention, UniformKeysAverageValues) {
  const Matrix q = Matrix::FromRows({{1, 2}, {-3, 0.5}});
  const Matrix k = Matrix::FromRows({{1, 1}, {1, 1}, {1, 1}});
  const Matrix v = Matrix::FromRows({{1, 0}, {2, 3}, {6, -3}});
  const Matrix out = MultiHeadAttention(q, k, v, 1, AttentionParams::Identity(2));
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(out(i, 0), 3.0, 1e-14);
    EXPECT_NEAR(out(i, 1), 0.0, 1e-14);
  }
}

// Scalar-loop single-head attention with explicit projections.
Matrix LoopAttention(const Matrix& q, const Matrix& k, const Matrix& v, const AttentionParams& p) {
  const std::size_t d = p.dim();
  auto project = [&](const Matrix& x, const Matrix& w, const Matrix& b) {
    Matrix out(x.rows(), d);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        double s = b(0, j);
        for (std::size_t t = 0; t < d; ++t) s += x(i, t) * w(t, j);
        out(i, j) = s;
      }
    }
    return out;
  };
  const Matrix pq = project(q, p.query_w, p.query_b);
  const Matrix pk = project(k, p.key_w, p.key_b);
  const Matrix pv = project(v, p.value_w, p.value_b);
  Matrix mixed(q.rows(), d);
  for (std::size_t i = 0; i < q.rows(); ++i) {
    std::vector<double> e(k.rows());
    double z = 0.0;
    for (std::size_t j = 0; j < k.rows(); ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < d; ++t) s += pq(i, t) * pk(j, t);
      e[j] = std::exp(s / std::sqrt(static_cast<double>(d)));
      z += e[j];
    }
    for (std::size_t j = 0; j < k.rows(); ++j) {
      for (std::size_t t = 0; t < d; ++t) mixed(i, t) += e[j] / z * pv(j, t);
    }
  }
  return project(mixed, p.output_w, p.output_b);
}

TEST(Attention, MatchesScalarLoop) {
  Rng rng(11);
  AttentionParams p = AttentionParams::Random(3, rng);
  p.query_b = oracle::RandomMatrix(1, 3, rng, 0.1);
  p.value_b = oracle::RandomMatrix(1, 3, rng, 0.1);
  const Matrix q = oracle::RandomMatrix(2, 3, rng);
  const Matrix kv = oracle::RandomMatrix(3, 3, rng);
  const Matrix got = MultiHeadAttention(q, kv, kv, 1, p);
  const Matrix want = LoopAttention(q, kv, kv, p);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got.data()[i], want.data()[i], 1e-13);
}

TEST(Attention, OutputsAreConvexCombinationsOfValues) {
  Rng rng(12);
  const AttentionParams id = AttentionParams::Identity(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix q = oracle::RandomMatrix(3, 4, rng, 3.0);
    const Matrix k = oracle::RandomMatrix(5, 4, rng, 3.0);
    const Matrix v = oracle::RandomMatrix(5, 4, rng, 3.0);
    AttentionCache cache;
    const Matrix out = MultiHeadAttention(q, k, v, 2, id, &cache);
    for (std::size_t c = 0; c < 4; ++c) {
      double lo = v(0, c), hi = v(0, c);
      for (std::size_t j = 1; j < 5; ++j) lo = std::min(lo, v(j, c)), hi = std::max(hi, v(j, c));
      for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_GE(out(i, c), lo - 1e-12);
        EXPECT_LE(out(i, c), hi + 1e-12);
      }
    }
    for (const Matrix& w : cache.weights) {
      for (std::size_t i = 0; i < w.rows(); ++i) {
        double s = 0.0;
        for (double x : w.row(i)) s += x;
        EXPECT_NEAR(s, 1.0, 1e-12);
      }
    }
  }
}

TEST(Attention, RejectsBadHeadCount) {
  Rng rng(1);
  const Matrix x = oracle::RandomMatrix(2, 6, rng);
  EXPECT_THROW(MultiHeadAttention(x, x, x, 4, AttentionParams::Identity(6)), ConfigError);
}

TEST(Attention, BackwardMatchesFiniteDifferences) {
  Rng rng(13);
  const AttentionParams p = AttentionParams::Random(4, rng);
  const Matrix q = oracle::RandomMatrix(2, 4, rng);
  const Matrix k = oracle::RandomMatrix(3, 4, rng);
  const Matrix v = oracle::RandomMatrix(3, 4, rng);
  const Matrix w = oracle::RandomMatrix(2, 4, rng);
  auto objective = [&](const Matrix& qq, const Matrix& kk, const Matrix& vv,
                       const AttentionParams& pp) {
    return Dot(MultiHeadAttention(qq, kk, vv, 2, pp).data(), w.data());
  };
  AttentionCache cache;
  MultiHeadAttention(q, k, v, 2, p, &cache);
  AttentionParams grads = ZerosLike(p);
  const AttentionInputGrads in = MultiHeadAttentionBackward(cache, 2, p, w, grads);
  EXPECT_LT(oracle::CheckGradients(p, grads,
                                   [&](const AttentionParams& pp) { return objective(q, k, v, pp); })
                .worst,
            1e-4);
  EXPECT_LT(oracle::CheckInputGradient(q, in.queries,
                                       [&](const Matrix& x) { return objective(x, k, v, p); }),
            1e-4);
  EXPECT_LT(oracle::CheckInputGradient(k, in.keys,
                                       [&](const Matrix& x) { return objective(q, x, v, p); }),
            1e-4);
  EXPECT_LT(oracle::CheckInputGradient(v, in.values,
                                       [&](const Matrix& x) { return objective(q, k, x, p); }),
            1e-4);
}

}  // namespace
}  // namespace multiie
