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

#include "multiie/trigger_fusion.h"

#include <cmath>
#include <string>

#include "multiie/error.h"

namespace multiie {

FusionParams FusionParams::Random(std::size_t dim, Rng& rng) {
  const double scale = std::sqrt(3.0 / static_cast<double>(dim));
  FusionParams p;
  p.v = Matrix::Uniform(1, dim, scale, rng);
  p.w1 = Matrix::Uniform(dim, dim, scale, rng);
  p.w2 = Matrix::Uniform(dim, dim, scale, rng);
  return p;
}

std::optional<PooledTrigger> PoolTriggers(std::span<const std::vector<double>> triggers) {
  if (triggers.empty()) return std::nullopt;
  const std::size_t d = triggers.front().size();
  PooledTrigger out{triggers.front(), std::vector<std::size_t>(d, 0)};
  for (std::size_t k = 1; k < triggers.size(); ++k) {
    if (triggers[k].size() != d) throw ShapeError("PoolTriggers: ragged trigger vectors");
    for (std::size_t c = 0; c < d; ++c) {
      if (triggers[k][c] > out.vector[c]) {
        out.vector[c] = triggers[k][c];
        out.argmax[c] = k;
      }
    }
  }
  return out;
}

std::vector<double> SpanRepresentation(const Matrix& tokens, const TypedSpan& span) {
  if (span.start > span.end || span.end >= tokens.rows()) {
    throw ArgumentError("SpanRepresentation: span outside token range");
  }
  std::vector<double> out(tokens.cols(), 0.0);
  for (std::size_t j = span.start; j <= span.end; ++j) {
    auto r = tokens.row(j);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += r[c];
  }
  const double n = static_cast<double>(span.length());
  for (double& v : out) v /= n;
  return out;
}

Matrix Fuse(const Matrix& tokens, std::span<const double> trigger, const FusionParams& params,
            FusionCache* cache) {
  const std::size_t d = params.dim();
  if (tokens.cols() != d || trigger.size() != d || params.w1.rows() != d ||
      params.w1.cols() != d || params.w2.rows() != d || params.w2.cols() != d) {
    throw ShapeError("Fuse: inconsistent dims (tokens " + std::to_string(tokens.cols()) +
                     ", trigger " + std::to_string(trigger.size()) + ", params " +
                     std::to_string(d) + ")");
  }
  Matrix hidden = MatMul(tokens, params.w1);
  AddRowBroadcast(hidden, MatMul(Matrix::RowVector(trigger), params.w2));
  hidden = Tanh(hidden);
  std::vector<double> scores(tokens.rows());
  for (std::size_t j = 0; j < tokens.rows(); ++j) scores[j] = Dot(hidden.row(j), params.v.row(0));
  std::vector<double> alpha = Softmax(scores);
  Matrix fused = tokens;
  for (std::size_t j = 0; j < fused.rows(); ++j) {
    for (double& x : fused.row(j)) x *= alpha[j];
  }
  if (cache != nullptr) {
    cache->hidden = std::move(hidden);
    cache->alpha = std::move(alpha);
  }
  return fused;
}

FusionInputGrads FuseBackward(const Matrix& tokens, std::span<const double> trigger,
                              const FusionParams& params, const FusionCache& cache,
                              const Matrix& dfused, FusionParams& grads) {
  const std::size_t l = tokens.rows();
  const std::size_t d = tokens.cols();
  FusionInputGrads out{Matrix(l, d), std::vector<double>(d, 0.0)};

  std::vector<double> dalpha(l);
  for (std::size_t j = 0; j < l; ++j) {
    dalpha[j] = Dot(dfused.row(j), tokens.row(j));
    auto dt = out.tokens.row(j);
    auto df = dfused.row(j);
    for (std::size_t c = 0; c < d; ++c) dt[c] = cache.alpha[j] * df[c];
  }
  std::vector<double> dscores = SoftmaxBackward(cache.alpha, dalpha);

  // dhidden_j = dscore_j * v ;  dpre = dhidden * (1 - hidden^2)
  Matrix dpre(l, d);
  auto v = params.v.row(0);
  auto dv = grads.v.row(0);
  for (std::size_t j = 0; j < l; ++j) {
    auto h = cache.hidden.row(j);
    auto dp = dpre.row(j);
    for (std::size_t c = 0; c < d; ++c) {
      dv[c] += dscores[j] * h[c];
      dp[c] = dscores[j] * v[c] * (1.0 - h[c] * h[c]);
    }
  }
  grads.w1 += MatMulTransA(tokens, dpre);
  out.tokens += MatMulTransB(dpre, params.w1);
  Matrix dpre_sum = ColumnSums(dpre);
  grads.w2 += MatMulTransA(Matrix::RowVector(trigger), dpre_sum);
  Matrix dtrig = MatMulTransB(dpre_sum, params.w2);
  for (std::size_t c = 0; c < d; ++c) out.trigger[c] = dtrig(0, c);
  return out;
}

}  // namespace multiie
