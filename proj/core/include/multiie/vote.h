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

#ifndef MULTIIE_VOTE_H_
#define MULTIIE_VOTE_H_

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace multiie {

// Predictions of one model, keyed by canonical record serialization
// (sorted JSON keys, NFC-normalized and trimmed strings). See
// CanonicalRecord in records.h.
struct PredictionSet {
  std::string model_id;
  std::set<std::string> items;
};

// Strict majority: ceil((k + 1) / 2).
std::size_t MajorityThreshold(std::size_t num_sets);

// Records present in at least `threshold` sets, in lexicographic order.
// Throws ArgumentError when sets is empty or threshold is outside [1, |sets|].
std::vector<std::string> Vote(std::span<const PredictionSet> sets, std::size_t threshold);

// Records whose summed set weight reaches `threshold`. Throws ArgumentError on
// a negative weight or a weight/set count mismatch.
std::vector<std::string> WeightedVote(std::span<const PredictionSet> sets,
                                      std::span<const double> weights, double threshold);

}  // namespace multiie

#endif  // MULTIIE_VOTE_H_
