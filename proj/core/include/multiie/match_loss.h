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

#ifndef MULTIIE_MATCH_LOSS_H_
#define MULTIIE_MATCH_LOSS_H_

#include <cstddef>
#include <vector>

#include "multiie/pointer.h"
#include "multiie/tensor.h"

namespace multiie {

// perm[i] is the column assigned to row i.
using Permutation = std::vector<std::size_t>;

struct Assignment {
  Permutation permutation;
  double cost = 0.0;  // sum of c[i][perm[i]] accumulated in row order
};

// Exact minimum-cost assignment on a square matrix (O(n^3) shortest
// augmenting paths). Among optimal permutations, returns the
// lexicographically smallest one. Throws ArgumentError for non-square or
// non-finite input.
Assignment Hungarian(const Matrix& cost);

// Maximum-total-score injection between the rows and columns of a
// rectangular score matrix. Returns, per row, the matched column or -1.
std::vector<long> MaxScoreAssignment(const Matrix& scores);

// Events x tokens x {start, end} x types, stored as one PointerGrid per
// event. Predictions hold probabilities, gold holds 0/1.
class LabelTensor {
 public:
  LabelTensor() = default;
  LabelTensor(std::size_t events, std::size_t tokens, std::size_t types);
  explicit LabelTensor(std::vector<PointerGrid> slices);

  std::size_t events() const { return slices_.size(); }
  std::size_t tokens() const { return slices_.empty() ? 0 : slices_.front().tokens(); }
  std::size_t types() const { return slices_.empty() ? 0 : slices_.front().types(); }

  // k = 0 start, 1 end.
  double& at(std::size_t event, std::size_t token, std::size_t k, std::size_t type);
  double at(std::size_t event, std::size_t token, std::size_t k, std::size_t type) const;

  const PointerGrid& slice(std::size_t event) const { return slices_[event]; }
  PointerGrid& slice(std::size_t event) { return slices_[event]; }
  const std::vector<PointerGrid>& slices() const { return slices_; }

  LabelTensor Permuted(const Permutation& order) const;  // out[i] = this[order[i]]

 private:
  std::vector<PointerGrid> slices_;
};

struct MatchOptions {
  // Negate the Hadamard agreement so that minimization maximizes agreement.
  // false keeps the raw (un-negated) sum for ablation.
  bool negate_cost = true;
  // When false the identity alignment is used (no matching).
  bool use_matching = true;
};

// -sum(pred . gold) over all l x 2 x r positions (sign per options).
double PairwiseCost(const PointerGrid& pred, const PointerGrid& gold,
                    const MatchOptions& options = {});

// cost(i, k) = PairwiseCost(pred_k, gold_i).
Matrix CostMatrix(const LabelTensor& pred, const LabelTensor& gold,
                  const MatchOptions& options = {});

struct MatchLossResult {
  double loss = 0.0;
  // permutation[i] = prediction slot aligned with gold event i.
  Permutation permutation;
  // dL/dlogit in prediction-slot order.
  std::vector<PointerGrid> grad;
};

// Optimal alignment, then mean BCE over the aligned tensors. The alignment is
// a constant for the gradient. The BCE sum runs in prediction-slot order so
// the value does not depend on gold event order.
MatchLossResult MatchingLoss(const LabelTensor& pred, const LabelTensor& gold,
                             const MatchOptions& options = {});

}  // namespace multiie

#endif  // MULTIIE_MATCH_LOSS_H_
