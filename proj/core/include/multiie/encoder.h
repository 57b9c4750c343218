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

#ifndef MULTIIE_ENCODER_H_
#define MULTIIE_ENCODER_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "multiie/tensor.h"

namespace multiie {

// Token -> row index. Row 0 is reserved for unknown tokens.
class Vocabulary {
 public:
  static constexpr std::size_t kUnk = 0;
  static constexpr std::string_view kUnkToken = "<unk>";

  Vocabulary();

  // Returns the index of `token`, inserting it if new.
  std::size_t Add(std::string_view token);
  std::size_t Lookup(std::string_view token) const;
  std::vector<std::size_t> Encode(std::span<const std::string> tokens) const;

  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Embedding table, optionally followed by a d x d affine map and tanh.
struct ToyEncoder {
  Matrix embedding;  // |V| x d
  Matrix proj_w;     // d x d, empty without projection
  Matrix proj_b;     // 1 x d, empty without projection

  static ToyEncoder Random(std::size_t vocab_size, std::size_t dim, bool projection, Rng& rng);

  std::size_t dim() const { return embedding.cols(); }
  bool has_projection() const { return !proj_w.empty(); }

  template <class F>
  void ForEachTensor(F&& f) {
    f("embedding", embedding);
    f("proj_w", proj_w);
    f("proj_b", proj_b);
  }
  template <class F>
  void ForEachTensor(F&& f) const {
    f("embedding", embedding);
    f("proj_w", proj_w);
    f("proj_b", proj_b);
  }
};

// Rows of the embedding table (l x d). Throws ArgumentError on an index
// outside the vocabulary.
Matrix Embed(const ToyEncoder& encoder, std::span<const std::size_t> ids);
// Scatter-adds dx rows into the embedding gradient.
void EmbedBackward(std::span<const std::size_t> ids, const Matrix& dx, ToyEncoder& grads);

// Token representations from an embedding sequence. Without a projection
// this is the identity.
Matrix EncodeEmbeddings(const ToyEncoder& encoder, const Matrix& x);
// Given x and the encoder output h, accumulates projection gradients and
// returns dL/dx.
Matrix EncodeEmbeddingsBackward(const ToyEncoder& encoder, const Matrix& x, const Matrix& h,
                                const Matrix& dh, ToyEncoder& grads);

}  // namespace multiie

#endif  // MULTIIE_ENCODER_H_
