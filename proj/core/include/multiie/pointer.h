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

#ifndef MULTIIE_POINTER_H_
#define MULTIIE_POINTER_H_

#include <cstddef>
#include <vector>

#include "multiie/tensor.h"

namespace multiie {

// Per-type start/end scorers. Column i of start_w is the weight vector of
// entity type i; biases are 1 x r.
struct PointerParams {
  Matrix start_w;  // d x r
  Matrix start_b;  // 1 x r
  Matrix end_w;    // d x r
  Matrix end_b;    // 1 x r

  static PointerParams Zeros(std::size_t dim, std::size_t types);
  static PointerParams Random(std::size_t dim, std::size_t types, double bias, Rng& rng);

  std::size_t dim() const { return start_w.rows(); }
  std::size_t types() const { return start_w.cols(); }

  template <class F>
  void ForEachTensor(F&& f) {
    f("start_w", start_w);
    f("start_b", start_b);
    f("end_w", end_w);
    f("end_b", end_b);
  }
  template <class F>
  void ForEachTensor(F&& f) const {
    f("start_w", start_w);
    f("start_b", start_b);
    f("end_w", end_w);
    f("end_b", end_b);
  }
};

// Start/end probabilities (or logits, or 0/1 gold indicators), each l x r.
struct PointerGrid {
  Matrix starts;
  Matrix ends;

  std::size_t tokens() const { return starts.rows(); }
  std::size_t types() const { return starts.cols(); }
  bool operator==(const PointerGrid&) const = default;
};

struct TypedSpan {
  std::size_t type = 0;
  std::size_t start = 0;
  std::size_t end = 0;  // inclusive
  double score = 0.0;

  std::size_t length() const { return end - start + 1; }
  bool SameExtent(const TypedSpan& o) const {
    return type == o.type && start == o.start && end == o.end;
  }
  bool operator==(const TypedSpan&) const = default;
};

// Pre-sigmoid scores, tokens (l x d) times params.
PointerGrid PointerLogits(const Matrix& tokens, const PointerParams& params);
// starts[j][i] = sigmoid(W_i^S . h_j + b_i^S), ends likewise.
PointerGrid Score(const Matrix& tokens, const PointerParams& params);
PointerGrid SigmoidGrid(const PointerGrid& logits);

// Per type: each start >= threshold pairs with the nearest not-yet-used end
// >= threshold at or after it; unclosed starts are dropped. Spans come out
// sorted by (type, start); score = min(start prob, end prob).
std::vector<TypedSpan> DecodeSpans(const PointerGrid& grid, double threshold = 0.5);

// Builds a 0/1 grid of the given size marking each span's start and end.
PointerGrid GoldGrid(std::size_t tokens, std::size_t types, const std::vector<TypedSpan>& spans);

inline constexpr double kProbabilityClamp = 1e-12;

struct BceResult {
  double loss = 0.0;
  PointerGrid grad;  // dL/dlogit for every entry: (p - y) / count
};

// Mean binary cross-entropy over all 2 * l * r entries. Gold entries must be
// exactly 0 or 1 (ArgumentError otherwise).
BceResult BceLoss(const PointerGrid& probs, const PointerGrid& gold);

// Un-normalized BCE sum over all entries (starts, then ends, row-major).
// When `grad` is non-null it receives (p - y) / normalizer per entry.
double BceSum(const PointerGrid& probs, const PointerGrid& gold, double normalizer,
              PointerGrid* grad);

// Backward through PointerLogits: accumulates parameter gradients and
// returns dL/dtokens.
Matrix PointerBackward(const Matrix& tokens, const PointerParams& params,
                       const PointerGrid& dlogits, PointerParams& grads);

}  // namespace multiie

#endif  // MULTIIE_POINTER_H_
