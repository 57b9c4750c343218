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

#include "multiie/match_loss.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "multiie/error.h"

namespace multiie {
namespace {

struct Solution {
  Permutation perm;
  std::vector<double> row_potential;
  std::vector<double> col_potential;
};

// Shortest augmenting path Hungarian method with row/column potentials.
// Keeps u[i] + v[j] <= c[i][j] with equality on matched edges.
Solution SolveAssignment(const Matrix& c) {
  const std::size_t n = c.rows();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<bool> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Solution s;
  s.perm.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) s.perm[match[j] - 1] = j - 1;
  s.row_potential.assign(u.begin() + 1, u.end());
  s.col_potential.assign(v.begin() + 1, v.end());
  return s;
}

double PermutationCost(const Matrix& c, const Permutation& perm) {
  double total = 0.0;
  for (std::size_t i = 0; i < perm.size(); ++i) total += c(i, perm[i]);
  return total;
}

}  // namespace

Assignment Hungarian(const Matrix& cost) {
  if (cost.rows() != cost.cols()) {
    throw ArgumentError("Hungarian: cost matrix is " + std::to_string(cost.rows()) + "x" +
                        std::to_string(cost.cols()) + ", expected square");
  }
  if (!cost.AllFinite()) throw ArgumentError("Hungarian: non-finite cost");
  const std::size_t n = cost.rows();
  if (n == 0) return {};

  Solution base = SolveAssignment(cost);
  const double optimum = PermutationCost(cost, base.perm);
  double magnitude = 0.0;
  for (double x : cost.data()) magnitude = std::max(magnitude, std::abs(x));
  const double tol = 1e-9 * (1.0 + magnitude * static_cast<double>(n));

  // Walk rows in order, fixing each to the smallest column that still admits
  // an optimal completion. Only edges tight under the optimal duals can be in
  // any optimal assignment, so non-tight columns are skipped without solving.
  Permutation current = base.perm;
  std::vector<bool> col_used(n, false);
  double prefix = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t col = 0; col < n; ++col) {
      if (col_used[col]) continue;
      const double reduced = cost(i, col) - base.row_potential[i] - base.col_potential[col];
      if (reduced > tol) continue;
      if (col == current[i]) break;

      // Optimal completion of rows i+1.. over the remaining columns.
      std::vector<std::size_t> rest_cols;
      for (std::size_t c = 0; c < n; ++c) {
        if (!col_used[c] && c != col) rest_cols.push_back(c);
      }
      const std::size_t k = rest_cols.size();
      Matrix sub(k, k);
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) sub(r, c) = cost(i + 1 + r, rest_cols[c]);
      }
      Permutation sub_perm = k > 0 ? SolveAssignment(sub).perm : Permutation{};
      const double total = prefix + cost(i, col) + PermutationCost(sub, sub_perm);
      if (total <= optimum + tol) {
        current[i] = col;
        for (std::size_t r = 0; r < k; ++r) current[i + 1 + r] = rest_cols[sub_perm[r]];
        break;
      }
    }
    col_used[current[i]] = true;
    prefix += cost(i, current[i]);
  }
  return {current, PermutationCost(cost, current)};
}

std::vector<long> MaxScoreAssignment(const Matrix& scores) {
  const std::size_t rows = scores.rows();
  const std::size_t cols = scores.cols();
  const std::size_t n = std::max(rows, cols);
  std::vector<long> out(rows, -1);
  if (rows == 0 || cols == 0) return out;
  Matrix cost(n, n, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) cost(i, j) = -scores(i, j);
  }
  Assignment a = Hungarian(cost);
  for (std::size_t i = 0; i < rows; ++i) {
    if (a.permutation[i] < cols) out[i] = static_cast<long>(a.permutation[i]);
  }
  return out;
}

LabelTensor::LabelTensor(std::size_t events, std::size_t tokens, std::size_t types) {
  slices_.assign(events, PointerGrid{Matrix(tokens, types), Matrix(tokens, types)});
}

LabelTensor::LabelTensor(std::vector<PointerGrid> slices) : slices_(std::move(slices)) {
  for (const auto& s : slices_) {
    if (s.starts.rows() != tokens() || s.starts.cols() != types() ||
        s.ends.rows() != tokens() || s.ends.cols() != types()) {
      throw ShapeError("LabelTensor: slices differ in shape");
    }
  }
}

double& LabelTensor::at(std::size_t event, std::size_t token, std::size_t k, std::size_t type) {
  PointerGrid& g = slices_[event];
  return k == 0 ? g.starts(token, type) : g.ends(token, type);
}

double LabelTensor::at(std::size_t event, std::size_t token, std::size_t k,
                       std::size_t type) const {
  const PointerGrid& g = slices_[event];
  return k == 0 ? g.starts(token, type) : g.ends(token, type);
}

LabelTensor LabelTensor::Permuted(const Permutation& order) const {
  std::vector<PointerGrid> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(slices_.at(i));
  return LabelTensor(std::move(out));
}

double PairwiseCost(const PointerGrid& pred, const PointerGrid& gold, const MatchOptions& options) {
  if (pred.starts.rows() != gold.starts.rows() || pred.starts.cols() != gold.starts.cols() ||
      pred.ends.rows() != gold.ends.rows() || pred.ends.cols() != gold.ends.cols()) {
    throw ShapeError("PairwiseCost: slice shapes differ");
  }
  double agreement = 0.0;
  auto p = pred.starts.data();
  auto g = gold.starts.data();
  for (std::size_t i = 0; i < p.size(); ++i) agreement += p[i] * g[i];
  p = pred.ends.data();
  g = gold.ends.data();
  for (std::size_t i = 0; i < p.size(); ++i) agreement += p[i] * g[i];
  return options.negate_cost ? -agreement : agreement;
}

Matrix CostMatrix(const LabelTensor& pred, const LabelTensor& gold, const MatchOptions& options) {
  if (pred.events() != gold.events()) {
    throw ShapeError("CostMatrix: " + std::to_string(pred.events()) + " predicted vs " +
                     std::to_string(gold.events()) + " gold events");
  }
  const std::size_t m = pred.events();
  Matrix c(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) c(i, k) = PairwiseCost(pred.slice(k), gold.slice(i), options);
  }
  return c;
}

MatchLossResult MatchingLoss(const LabelTensor& pred, const LabelTensor& gold,
                             const MatchOptions& options) {
  if (pred.events() != gold.events() || pred.tokens() != gold.tokens() ||
      pred.types() != gold.types()) {
    throw ShapeError("MatchingLoss: prediction and gold dims differ");
  }
  const std::size_t m = pred.events();
  MatchLossResult out;
  if (options.use_matching) {
    out.permutation = Hungarian(CostMatrix(pred, gold, options)).permutation;
  } else {
    out.permutation.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.permutation[i] = i;
  }
  Permutation gold_of(m);
  for (std::size_t i = 0; i < m; ++i) gold_of[out.permutation[i]] = i;

  const double count = static_cast<double>(m * pred.tokens() * pred.types() * 2);
  out.grad.resize(m);
  double total = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    total += BceSum(pred.slice(k), gold.slice(gold_of[k]), count, &out.grad[k]);
  }
  out.loss = count > 0 ? total / count : 0.0;
  return out;
}

}  // namespace multiie
