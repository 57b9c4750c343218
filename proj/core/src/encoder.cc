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

#include "multiie/encoder.h"

#include <cmath>
#include <string>

#include "multiie/error.h"

namespace multiie {

Vocabulary::Vocabulary() { Add(kUnkToken); }

std::size_t Vocabulary::Add(std::string_view token) {
  auto [it, inserted] = index_.try_emplace(std::string(token), tokens_.size());
  if (inserted) tokens_.emplace_back(token);
  return it->second;
}

std::size_t Vocabulary::Lookup(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnk : it->second;
}

std::vector<std::size_t> Vocabulary::Encode(std::span<const std::string> tokens) const {
  std::vector<std::size_t> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(Lookup(t));
  return out;
}

ToyEncoder ToyEncoder::Random(std::size_t vocab_size, std::size_t dim, bool projection, Rng& rng) {
  ToyEncoder e;
  e.embedding = Matrix::Uniform(vocab_size, dim, 0.5, rng);
  if (projection) {
    e.proj_w = Matrix::Uniform(dim, dim, std::sqrt(6.0 / (2.0 * static_cast<double>(dim))), rng);
    e.proj_b = Matrix(1, dim);
  }
  return e;
}

Matrix Embed(const ToyEncoder& encoder, std::span<const std::size_t> ids) {
  const std::size_t d = encoder.dim();
  Matrix x(ids.size(), d);
  for (std::size_t j = 0; j < ids.size(); ++j) {
    if (ids[j] >= encoder.embedding.rows()) {
      throw ArgumentError("Embed: token id " + std::to_string(ids[j]) + " outside vocabulary of " +
                          std::to_string(encoder.embedding.rows()));
    }
    auto src = encoder.embedding.row(ids[j]);
    std::copy(src.begin(), src.end(), x.row(j).begin());
  }
  return x;
}

void EmbedBackward(std::span<const std::size_t> ids, const Matrix& dx, ToyEncoder& grads) {
  for (std::size_t j = 0; j < ids.size(); ++j) {
    auto dst = grads.embedding.row(ids[j]);
    auto src = dx.row(j);
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
  }
}

Matrix EncodeEmbeddings(const ToyEncoder& encoder, const Matrix& x) {
  if (x.cols() != encoder.dim()) {
    throw ShapeError("EncodeEmbeddings: input width " + std::to_string(x.cols()) + " != " +
                     std::to_string(encoder.dim()));
  }
  if (!encoder.has_projection()) return x;
  return Tanh(Affine(x, encoder.proj_w, encoder.proj_b));
}

Matrix EncodeEmbeddingsBackward(const ToyEncoder& encoder, const Matrix& x, const Matrix& h,
                                const Matrix& dh, ToyEncoder& grads) {
  if (!encoder.has_projection()) return dh;
  Matrix dpre = dh;
  auto hd = h.data();
  auto pd = dpre.data();
  for (std::size_t i = 0; i < pd.size(); ++i) pd[i] *= 1.0 - hd[i] * hd[i];
  return AffineBackward(x, encoder.proj_w, dpre, grads.proj_w, grads.proj_b);
}

}  // namespace multiie
