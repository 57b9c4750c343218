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

#include "multiie/pointer.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "multiie/error.h"

namespace multiie {
namespace {

void RequireSameShape(const PointerGrid& a, const PointerGrid& b, const char* op) {
  if (a.starts.rows() != b.starts.rows() || a.starts.cols() != b.starts.cols() ||
      a.ends.rows() != b.ends.rows() || a.ends.cols() != b.ends.cols()) {
    throw ShapeError(std::string(op) + ": grid shapes differ");
  }
}

}  // namespace

PointerParams PointerParams::Zeros(std::size_t dim, std::size_t types) {
  return {Matrix(dim, types), Matrix(1, types), Matrix(dim, types), Matrix(1, types)};
}

PointerParams PointerParams::Random(std::size_t dim, std::size_t types, double bias, Rng& rng) {
  const double scale = std::sqrt(6.0 / static_cast<double>(dim + types));
  PointerParams p;
  p.start_w = Matrix::Uniform(dim, types, scale, rng);
  p.end_w = Matrix::Uniform(dim, types, scale, rng);
  p.start_b = Matrix(1, types, bias);
  p.end_b = Matrix(1, types, bias);
  return p;
}

PointerGrid PointerLogits(const Matrix& tokens, const PointerParams& params) {
  if (tokens.cols() != params.dim()) {
    throw ShapeError("pointer: token dim " + std::to_string(tokens.cols()) + " != head dim " +
                     std::to_string(params.dim()));
  }
  return {Affine(tokens, params.start_w, params.start_b),
          Affine(tokens, params.end_w, params.end_b)};
}

PointerGrid SigmoidGrid(const PointerGrid& logits) {
  return {Sigmoid(logits.starts), Sigmoid(logits.ends)};
}

PointerGrid Score(const Matrix& tokens, const PointerParams& params) {
  return SigmoidGrid(PointerLogits(tokens, params));
}

std::vector<TypedSpan> DecodeSpans(const PointerGrid& grid, double threshold) {
  const std::size_t l = grid.tokens();
  const std::size_t r = grid.types();
  std::vector<TypedSpan> spans;
  std::vector<bool> used(l);
  for (std::size_t type = 0; type < r; ++type) {
    std::fill(used.begin(), used.end(), false);
    for (std::size_t s = 0; s < l; ++s) {
      const double ps = grid.starts(s, type);
      if (ps < threshold) continue;
      for (std::size_t e = s; e < l; ++e) {
        const double pe = grid.ends(e, type);
        if (pe >= threshold && !used[e]) {
          used[e] = true;
          spans.push_back({type, s, e, std::min(ps, pe)});
          break;
        }
      }
    }
  }
  return spans;
}

PointerGrid GoldGrid(std::size_t tokens, std::size_t types, const std::vector<TypedSpan>& spans) {
  PointerGrid g{Matrix(tokens, types), Matrix(tokens, types)};
  for (const auto& span : spans) {
    if (span.type >= types || span.start > span.end || span.end >= tokens) {
      throw ArgumentError("GoldGrid: span out of range");
    }
    g.starts(span.start, span.type) = 1.0;
    g.ends(span.end, span.type) = 1.0;
  }
  return g;
}

double BceSum(const PointerGrid& probs, const PointerGrid& gold, double normalizer,
              PointerGrid* grad) {
  RequireSameShape(probs, gold, "BceLoss");
  if (grad != nullptr) {
    *grad = {Matrix(probs.starts.rows(), probs.starts.cols()),
             Matrix(probs.ends.rows(), probs.ends.cols())};
  }
  double total = 0.0;
  auto accumulate = [&](const Matrix& p, const Matrix& y, Matrix* g) {
    auto pd = p.data();
    auto yd = y.data();
    for (std::size_t i = 0; i < pd.size(); ++i) {
      if (yd[i] != 0.0 && yd[i] != 1.0) {
        throw ArgumentError("BceLoss: gold entry " + std::to_string(yd[i]) + " not in {0,1}");
      }
      const double pc = std::clamp(pd[i], kProbabilityClamp, 1.0 - kProbabilityClamp);
      total -= yd[i] == 1.0 ? std::log(pc) : std::log1p(-pc);
      if (g != nullptr) g->data()[i] = (pd[i] - yd[i]) / normalizer;
    }
  };
  accumulate(probs.starts, gold.starts, grad ? &grad->starts : nullptr);
  accumulate(probs.ends, gold.ends, grad ? &grad->ends : nullptr);
  return total;
}

BceResult BceLoss(const PointerGrid& probs, const PointerGrid& gold) {
  const double count = static_cast<double>(probs.starts.size() + probs.ends.size());
  BceResult out;
  const double total = BceSum(probs, gold, count, &out.grad);
  out.loss = count > 0 ? total / count : 0.0;
  return out;
}

Matrix PointerBackward(const Matrix& tokens, const PointerParams& params,
                       const PointerGrid& dlogits, PointerParams& grads) {
  Matrix dtokens = AffineBackward(tokens, params.start_w, dlogits.starts, grads.start_w,
                                  grads.start_b);
  dtokens += AffineBackward(tokens, params.end_w, dlogits.ends, grads.end_w, grads.end_b);
  return dtokens;
}

}  // namespace multiie
