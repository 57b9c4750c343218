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

#include "multiie/set_decoder.h"

#include <cmath>

#include "multiie/error.h"

namespace multiie {

QueryBank QueryBank::Random(std::size_t slots, std::size_t dim, Rng& rng) {
  return {Matrix::Uniform(slots, dim, 0.1, rng)};
}

DecoderLayer DecoderLayer::Random(std::size_t dim, Rng& rng) {
  const std::size_t hidden = 4 * dim;
  const double scale = std::sqrt(6.0 / static_cast<double>(dim + hidden));
  DecoderLayer layer;
  layer.self_attention = AttentionParams::Random(dim, rng);
  layer.cross_attention = AttentionParams::Random(dim, rng);
  layer.norm1 = LayerNormParams::Init(dim);
  layer.norm2 = LayerNormParams::Init(dim);
  layer.norm3 = LayerNormParams::Init(dim);
  layer.ff_w1 = Matrix::Uniform(dim, hidden, scale, rng);
  layer.ff_b1 = Matrix(1, hidden);
  layer.ff_w2 = Matrix::Uniform(hidden, dim, scale, rng);
  layer.ff_b2 = Matrix(1, dim);
  return layer;
}

DecoderStack DecoderStack::Random(std::size_t dim, std::size_t num_layers, std::size_t heads,
                                  Rng& rng) {
  if (num_layers == 0) throw ConfigError("decoder: at least one layer required");
  if (heads == 0 || dim % heads != 0) {
    throw ConfigError("decoder: dim " + std::to_string(dim) + " not divisible by heads " +
                      std::to_string(heads));
  }
  DecoderStack stack;
  stack.heads = heads;
  for (std::size_t i = 0; i < num_layers; ++i) stack.layers.push_back(DecoderLayer::Random(dim, rng));
  return stack;
}

Matrix RefineQueries(const Matrix& tokens, const QueryBank& queries, const DecoderStack& stack,
                     DecoderCache* cache) {
  const std::size_t d = stack.dim();
  if (tokens.cols() != d || queries.queries.cols() != d) {
    throw ShapeError("decoder: token dim " + std::to_string(tokens.cols()) + ", query dim " +
                     std::to_string(queries.queries.cols()) + ", model dim " + std::to_string(d));
  }
  if (cache != nullptr) cache->layers.assign(stack.layers.size(), {});
  Matrix x = queries.queries;
  for (std::size_t n = 0; n < stack.layers.size(); ++n) {
    const DecoderLayer& layer = stack.layers[n];
    DecoderLayerCache* lc = cache != nullptr ? &cache->layers[n] : nullptr;

    Matrix self = MultiHeadAttention(x, x, x, stack.heads, layer.self_attention,
                                     lc ? &lc->self_attention : nullptr);
    x = LayerNorm(x + self, layer.norm1, lc ? &lc->norm1 : nullptr);

    Matrix cross = MultiHeadAttention(x, tokens, tokens, stack.heads, layer.cross_attention,
                                      lc ? &lc->cross_attention : nullptr);
    x = LayerNorm(x + cross, layer.norm2, lc ? &lc->norm2 : nullptr);

    Matrix hidden = Tanh(Affine(x, layer.ff_w1, layer.ff_b1));
    Matrix ff = Affine(hidden, layer.ff_w2, layer.ff_b2);
    if (lc != nullptr) {
      lc->ff_input = x;
      lc->ff_hidden = std::move(hidden);
    }
    x = LayerNorm(x + ff, layer.norm3, lc ? &lc->norm3 : nullptr);
  }
  return x;
}

Tensor3 ExpandQueries(const Matrix& refined, const Matrix& tokens) {
  if (refined.cols() != tokens.cols()) throw ShapeError("ExpandQueries: dim mismatch");
  Tensor3 out(refined.rows(), tokens.rows(), tokens.cols());
  for (std::size_t i = 0; i < refined.rows(); ++i) {
    for (std::size_t j = 0; j < tokens.rows(); ++j) {
      for (std::size_t c = 0; c < tokens.cols(); ++c) out(i, j, c) = refined(i, c) + tokens(j, c);
    }
  }
  return out;
}

Tensor3 Decode(const Matrix& tokens, const QueryBank& queries, const DecoderStack& stack,
               DecoderCache* cache) {
  return ExpandQueries(RefineQueries(tokens, queries, stack, cache), tokens);
}

DecoderInputGrads ExpandQueriesBackward(const Tensor3& dexpanded) {
  DecoderInputGrads out{Matrix(dexpanded.dim1(), dexpanded.dim2()),
                        Matrix(dexpanded.dim0(), dexpanded.dim2())};
  for (std::size_t i = 0; i < dexpanded.dim0(); ++i) {
    for (std::size_t j = 0; j < dexpanded.dim1(); ++j) {
      for (std::size_t c = 0; c < dexpanded.dim2(); ++c) {
        const double g = dexpanded(i, j, c);
        out.queries(i, c) += g;
        out.tokens(j, c) += g;
      }
    }
  }
  return out;
}

DecoderInputGrads RefineQueriesBackward(const DecoderCache& cache, const DecoderStack& stack,
                                        const Matrix& drefined, DecoderStack& grads) {
  Matrix dx = drefined;
  Matrix dtokens;
  for (std::size_t n = stack.layers.size(); n-- > 0;) {
    const DecoderLayer& layer = stack.layers[n];
    const DecoderLayerCache& lc = cache.layers[n];
    DecoderLayer& g = grads.layers[n];

    // x3 = LN3(x2 + FFN(x2))
    Matrix dsum = LayerNormBackward(lc.norm3, layer.norm3, dx, g.norm3);
    Matrix dhidden = AffineBackward(lc.ff_hidden, layer.ff_w2, dsum, g.ff_w2, g.ff_b2);
    auto h = lc.ff_hidden.data();
    auto dh = dhidden.data();
    for (std::size_t k = 0; k < dh.size(); ++k) dh[k] *= 1.0 - h[k] * h[k];
    dx = dsum + AffineBackward(lc.ff_input, layer.ff_w1, dhidden, g.ff_w1, g.ff_b1);

    // x2 = LN2(x1 + Cross(x1, H, H))
    dsum = LayerNormBackward(lc.norm2, layer.norm2, dx, g.norm2);
    AttentionInputGrads cross = MultiHeadAttentionBackward(lc.cross_attention, stack.heads,
                                                           layer.cross_attention, dsum,
                                                           g.cross_attention);
    dx = dsum + cross.queries;
    Matrix dh_layer = cross.keys + cross.values;
    if (dtokens.empty()) {
      dtokens = std::move(dh_layer);
    } else {
      dtokens += dh_layer;
    }

    // x1 = LN1(x0 + Self(x0, x0, x0))
    dsum = LayerNormBackward(lc.norm1, layer.norm1, dx, g.norm1);
    AttentionInputGrads self = MultiHeadAttentionBackward(lc.self_attention, stack.heads,
                                                          layer.self_attention, dsum,
                                                          g.self_attention);
    dx = dsum + self.queries + self.keys + self.values;
  }
  return {std::move(dtokens), std::move(dx)};
}

std::vector<PointerGrid> PointerOutputs(const Tensor3& expanded, const PointerParams& params) {
  if (expanded.dim2() != params.dim()) {
    throw ShapeError("PointerOutputs: slice dim " + std::to_string(expanded.dim2()) +
                     " != head dim " + std::to_string(params.dim()));
  }
  std::vector<PointerGrid> out;
  out.reserve(expanded.dim0());
  for (std::size_t i = 0; i < expanded.dim0(); ++i) out.push_back(Score(expanded.Slice(i), params));
  return out;
}

Tensor3 PointerOutputsBackward(const Tensor3& expanded, const PointerParams& params,
                               const std::vector<PointerGrid>& dlogits, PointerParams& grads) {
  if (dlogits.size() != expanded.dim0()) throw ShapeError("PointerOutputsBackward: slot count");
  Tensor3 out(expanded.dim0(), expanded.dim1(), expanded.dim2());
  for (std::size_t i = 0; i < expanded.dim0(); ++i) {
    out.SetSlice(i, PointerBackward(expanded.Slice(i), params, dlogits[i], grads));
  }
  return out;
}

}  // namespace multiie
