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

#ifndef MULTIIE_SET_DECODER_H_
#define MULTIIE_SET_DECODER_H_

#include <cstddef>
#include <string>
#include <vector>

#include "multiie/attention.h"
#include "multiie/params.h"
#include "multiie/pointer.h"
#include "multiie/tensor.h"

namespace multiie {

inline constexpr std::size_t kDefaultEventSlots = 16;
inline constexpr std::size_t kDefaultDecoderLayers = 3;
inline constexpr std::size_t kDefaultDecoderHeads = 4;

// m learnable event queries (m x d).
struct QueryBank {
  Matrix queries;

  // Uniform in [-0.1, 0.1].
  static QueryBank Random(std::size_t slots, std::size_t dim, Rng& rng);
  std::size_t slots() const { return queries.rows(); }

  template <class F>
  void ForEachTensor(F&& f) {
    f("queries", queries);
  }
  template <class F>
  void ForEachTensor(F&& f) const {
    f("queries", queries);
  }
};

// Self-attention, inter-attention over the encoder tokens, then a tanh
// feed-forward block (hidden width 4d). Post-norm residual around each.
struct DecoderLayer {
  AttentionParams self_attention;
  AttentionParams cross_attention;
  LayerNormParams norm1, norm2, norm3;
  Matrix ff_w1, ff_b1;  // d x 4d, 1 x 4d
  Matrix ff_w2, ff_b2;  // 4d x d, 1 x d

  static DecoderLayer Random(std::size_t dim, Rng& rng);

  template <class F>
  void ForEachTensor(F&& f) {
    ForEachNested("self_attention", self_attention, f);
    ForEachNested("cross_attention", cross_attention, f);
    ForEachNested("norm1", norm1, f);
    ForEachNested("norm2", norm2, f);
    ForEachNested("norm3", norm3, f);
    f("ff_w1", ff_w1);
    f("ff_b1", ff_b1);
    f("ff_w2", ff_w2);
    f("ff_b2", ff_b2);
  }
  template <class F>
  void ForEachTensor(F&& f) const {
    ForEachNested("self_attention", self_attention, f);
    ForEachNested("cross_attention", cross_attention, f);
    ForEachNested("norm1", norm1, f);
    ForEachNested("norm2", norm2, f);
    ForEachNested("norm3", norm3, f);
    f("ff_w1", ff_w1);
    f("ff_b1", ff_b1);
    f("ff_w2", ff_w2);
    f("ff_b2", ff_b2);
  }
};

struct DecoderStack {
  std::vector<DecoderLayer> layers;
  std::size_t heads = kDefaultDecoderHeads;

  // Throws ConfigError for zero layers or dim not divisible by heads.
  static DecoderStack Random(std::size_t dim, std::size_t num_layers, std::size_t heads,
                             Rng& rng);
  std::size_t dim() const { return layers.empty() ? 0 : layers.front().ff_w1.rows(); }

  template <class F>
  void ForEachTensor(F&& f) {
    for (std::size_t i = 0; i < layers.size(); ++i) {
      ForEachNested("layers." + std::to_string(i), layers[i], f);
    }
  }
  template <class F>
  void ForEachTensor(F&& f) const {
    for (std::size_t i = 0; i < layers.size(); ++i) {
      ForEachNested("layers." + std::to_string(i), layers[i], f);
    }
  }
};

struct DecoderLayerCache {
  AttentionCache self_attention;
  AttentionCache cross_attention;
  LayerNormCache norm1, norm2, norm3;
  Matrix ff_input;
  Matrix ff_hidden;  // tanh activations
};

struct DecoderCache {
  std::vector<DecoderLayerCache> layers;
};

// Runs the N layers over the query bank and returns the refined queries (m x d).
Matrix RefineQueries(const Matrix& tokens, const QueryBank& queries, const DecoderStack& stack,
                     DecoderCache* cache = nullptr);

// t_i[j] = refined_i + h_j, giving m x l x d.
Tensor3 ExpandQueries(const Matrix& refined, const Matrix& tokens);

Tensor3 Decode(const Matrix& tokens, const QueryBank& queries, const DecoderStack& stack,
               DecoderCache* cache = nullptr);

struct DecoderInputGrads {
  Matrix tokens;
  Matrix queries;
};

// Backward of ExpandQueries: dT summed over tokens (queries) and over slots (tokens).
DecoderInputGrads ExpandQueriesBackward(const Tensor3& dexpanded);

// Backward of RefineQueries. Accumulates parameter gradients into `grads`.
DecoderInputGrads RefineQueriesBackward(const DecoderCache& cache, const DecoderStack& stack,
                                        const Matrix& drefined, DecoderStack& grads);

// Applies the pointer head to each t_i independently.
std::vector<PointerGrid> PointerOutputs(const Tensor3& expanded, const PointerParams& params);

// Backward of PointerOutputs given per-slot logit gradients.
Tensor3 PointerOutputsBackward(const Tensor3& expanded, const PointerParams& params,
                               const std::vector<PointerGrid>& dlogits, PointerParams& grads);

}  // namespace multiie

#endif  // MULTIIE_SET_DECODER_H_
