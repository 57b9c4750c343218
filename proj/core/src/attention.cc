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

#include "multiie/attention.h"

#include <cmath>
#include <string>

#include "multiie/error.h"

namespace multiie {
namespace {

Matrix ColumnBlock(const Matrix& m, std::size_t begin, std::size_t width) {
  Matrix out(m.rows(), width);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < width; ++j) out(i, j) = m(i, begin + j);
  }
  return out;
}

void AddColumnBlock(Matrix& m, std::size_t begin, const Matrix& block) {
  for (std::size_t i = 0; i < block.rows(); ++i) {
    for (std::size_t j = 0; j < block.cols(); ++j) m(i, begin + j) += block(i, j);
  }
}

void CheckConfig(std::size_t dim, std::size_t heads) {
  if (heads == 0 || dim % heads != 0) {
    throw ConfigError("attention: dim " + std::to_string(dim) + " not divisible by heads " +
                      std::to_string(heads));
  }
}

}  // namespace

AttentionParams AttentionParams::Random(std::size_t dim, Rng& rng) {
  const double scale = std::sqrt(6.0 / static_cast<double>(2 * dim));
  AttentionParams p;
  p.query_w = Matrix::Uniform(dim, dim, scale, rng);
  p.key_w = Matrix::Uniform(dim, dim, scale, rng);
  p.value_w = Matrix::Uniform(dim, dim, scale, rng);
  p.output_w = Matrix::Uniform(dim, dim, scale, rng);
  p.query_b = p.key_b = p.value_b = p.output_b = Matrix(1, dim);
  return p;
}

AttentionParams AttentionParams::Identity(std::size_t dim) {
  AttentionParams p;
  p.query_w = p.key_w = p.value_w = p.output_w = Matrix::Identity(dim);
  p.query_b = p.key_b = p.value_b = p.output_b = Matrix(1, dim);
  return p;
}

Matrix MultiHeadAttention(const Matrix& queries, const Matrix& keys, const Matrix& values,
                          std::size_t heads, const AttentionParams& params,
                          AttentionCache* cache) {
  const std::size_t dim = params.dim();
  CheckConfig(dim, heads);
  if (keys.rows() != values.rows()) {
    throw ShapeError("attention: " + std::to_string(keys.rows()) + " keys but " +
                     std::to_string(values.rows()) + " values");
  }
  if (queries.cols() != dim || keys.cols() != dim || values.cols() != dim) {
    throw ShapeError("attention: input width differs from model dim " + std::to_string(dim));
  }
  const std::size_t head_dim = dim / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(head_dim));

  Matrix q = Affine(queries, params.query_w, params.query_b);
  Matrix k = Affine(keys, params.key_w, params.key_b);
  Matrix v = Affine(values, params.value_w, params.value_b);

  Matrix concat(queries.rows(), dim);
  std::vector<Matrix> weights;
  weights.reserve(heads);
  for (std::size_t h = 0; h < heads; ++h) {
    const std::size_t begin = h * head_dim;
    Matrix qh = ColumnBlock(q, begin, head_dim);
    Matrix kh = ColumnBlock(k, begin, head_dim);
    Matrix vh = ColumnBlock(v, begin, head_dim);
    Matrix scores = MatMulTransB(qh, kh);
    scores *= scale;
    Matrix attn = SoftmaxRows(scores);
    AddColumnBlock(concat, begin, MatMul(attn, vh));
    weights.push_back(std::move(attn));
  }
  Matrix out = Affine(concat, params.output_w, params.output_b);
  if (cache != nullptr) {
    cache->query_in = queries;
    cache->key_in = keys;
    cache->value_in = values;
    cache->q = std::move(q);
    cache->k = std::move(k);
    cache->v = std::move(v);
    cache->weights = std::move(weights);
    cache->concat = std::move(concat);
  }
  return out;
}

AttentionInputGrads MultiHeadAttentionBackward(const AttentionCache& cache, std::size_t heads,
                                               const AttentionParams& params, const Matrix& dy,
                                               AttentionParams& grads) {
  const std::size_t dim = params.dim();
  CheckConfig(dim, heads);
  const std::size_t head_dim = dim / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(head_dim));

  Matrix dconcat = AffineBackward(cache.concat, params.output_w, dy, grads.output_w, grads.output_b);
  Matrix dq(cache.q.rows(), dim);
  Matrix dk(cache.k.rows(), dim);
  Matrix dv(cache.v.rows(), dim);
  for (std::size_t h = 0; h < heads; ++h) {
    const std::size_t begin = h * head_dim;
    const Matrix& attn = cache.weights[h];
    Matrix qh = ColumnBlock(cache.q, begin, head_dim);
    Matrix kh = ColumnBlock(cache.k, begin, head_dim);
    Matrix vh = ColumnBlock(cache.v, begin, head_dim);
    Matrix dout = ColumnBlock(dconcat, begin, head_dim);

    Matrix dattn = MatMulTransB(dout, vh);
    AddColumnBlock(dv, begin, MatMulTransA(attn, dout));
    Matrix dscores(attn.rows(), attn.cols());
    for (std::size_t i = 0; i < attn.rows(); ++i) {
      auto g = SoftmaxBackward(attn.row(i), dattn.row(i));
      for (std::size_t j = 0; j < g.size(); ++j) dscores(i, j) = g[j] * scale;
    }
    AddColumnBlock(dq, begin, MatMul(dscores, kh));
    AddColumnBlock(dk, begin, MatMulTransA(dscores, qh));
  }
  AttentionInputGrads out;
  out.queries = AffineBackward(cache.query_in, params.query_w, dq, grads.query_w, grads.query_b);
  out.keys = AffineBackward(cache.key_in, params.key_w, dk, grads.key_w, grads.key_b);
  out.values = AffineBackward(cache.value_in, params.value_w, dv, grads.value_w, grads.value_b);
  return out;
}

}  // namespace multiie
