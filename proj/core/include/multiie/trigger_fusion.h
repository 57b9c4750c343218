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

#ifndef MULTIIE_TRIGGER_FUSION_H_
#define MULTIIE_TRIGGER_FUSION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "multiie/pointer.h"
#include "multiie/tensor.h"

namespace multiie {

// Additive-attention parameters. Weights act on row vectors:
//   score_j = v . tanh(h_j W1 + t W2)
struct FusionParams {
  Matrix v;   // 1 x d
  Matrix w1;  // d x d
  Matrix w2;  // d x d

  static FusionParams Random(std::size_t dim, Rng& rng);
  std::size_t dim() const { return v.cols(); }

  template <class F>
  void ForEachTensor(F&& f) {
    f("v", v);
    f("w1", w1);
    f("w2", w2);
  }
  template <class F>
  void ForEachTensor(F&& f) const {
    f("v", v);
    f("w1", w1);
    f("w2", w2);
  }
};

struct PooledTrigger {
  std::vector<double> vector;
  // For each coordinate, the index of the input that supplied the maximum.
  std::vector<std::size_t> argmax;
};

// Coordinate-wise maximum. std::nullopt means "no trigger"; callers then
// leave the token representations unchanged.
std::optional<PooledTrigger> PoolTriggers(std::span<const std::vector<double>> triggers);

// Mean of token rows [span.start, span.end].
std::vector<double> SpanRepresentation(const Matrix& tokens, const TypedSpan& span);

struct FusionCache {
  Matrix hidden;  // tanh(H W1 + t W2), l x d
  std::vector<double> alpha;
};

// alpha = softmax_j(v . tanh(h_j W1 + t W2)); row j of the result is alpha_j * h_j.
Matrix Fuse(const Matrix& tokens, std::span<const double> trigger, const FusionParams& params,
            FusionCache* cache = nullptr);

struct FusionInputGrads {
  Matrix tokens;
  std::vector<double> trigger;
};

FusionInputGrads FuseBackward(const Matrix& tokens, std::span<const double> trigger,
                              const FusionParams& params, const FusionCache& cache,
                              const Matrix& dfused, FusionParams& grads);

}  // namespace multiie

#endif  // MULTIIE_TRIGGER_FUSION_H_
