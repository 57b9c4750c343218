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

#ifndef MULTIIE_ATTENTION_H_
#define MULTIIE_ATTENTION_H_

#include <cstddef>
#include <vector>

#include "multiie/tensor.h"

namespace multiie {

// Projections of one multi-head attention block. All weights are d x d and
// applied on the right (row vectors); biases are 1 x d.
struct AttentionParams {
  Matrix query_w, query_b;
  Matrix key_w, key_b;
  Matrix value_w, value_b;
  Matrix output_w, output_b;

  // Xavier-uniform weights, zero biases.
  static AttentionParams Random(std::size_t dim, Rng& rng);
  // Identity projections and zero biases.
  static AttentionParams Identity(std::size_t dim);

  std::size_t dim() const { return query_w.rows(); }

  template <class F>
  void ForEachTensor(F&& f) {
    f("query_w", query_w);
    f("query_b", query_b);
    f("key_w", key_w);
    f("key_b", key_b);
    f("value_w", value_w);
    f("value_b", value_b);
    f("output_w", output_w);
    f("output_b", output_b);
  }
  template <class F>
  void ForEachTensor(F&& f) const {
    f("query_w", query_w);
    f("query_b", query_b);
    f("key_w", key_w);
    f("key_b", key_b);
    f("value_w", value_w);
    f("value_b", value_b);
    f("output_w", output_w);
    f("output_b", output_b);
  }
};

// Forward intermediates needed by the backward pass.
struct AttentionCache {
  Matrix query_in, key_in, value_in;
  Matrix q, k, v;
  std::vector<Matrix> weights;  // per head: queries x keys, rows sum to 1
  Matrix concat;
};

// Scaled dot-product attention per head over column blocks of width
// dim / heads, heads concatenated and projected. No masking.
// Throws ConfigError when dim is not divisible by heads and ShapeError when
// key and value row counts differ.
Matrix MultiHeadAttention(const Matrix& queries, const Matrix& keys, const Matrix& values,
                          std::size_t heads, const AttentionParams& params,
                          AttentionCache* cache = nullptr);

struct AttentionInputGrads {
  Matrix queries;
  Matrix keys;
  Matrix values;
};

// Accumulates parameter gradients into `grads`.
AttentionInputGrads MultiHeadAttentionBackward(const AttentionCache& cache, std::size_t heads,
                                               const AttentionParams& params, const Matrix& dy,
                                               AttentionParams& grads);

}  // namespace multiie

#endif  // MULTIIE_ATTENTION_H_
