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

#include "multiie/vote.h"

#include <map>

#include "multiie/error.h"

namespace multiie {

std::size_t MajorityThreshold(std::size_t num_sets) { return num_sets / 2 + 1; }

std::vector<std::string> Vote(std::span<const PredictionSet> sets, std::size_t threshold) {
  if (sets.empty()) throw ArgumentError("vote: no prediction sets");
  if (threshold < 1 || threshold > sets.size()) {
    throw ArgumentError("vote: threshold " + std::to_string(threshold) + " outside [1, " +
                        std::to_string(sets.size()) + "]");
  }
  std::map<std::string_view, std::size_t> counts;
  for (const auto& set : sets) {
    for (const auto& item : set.items) ++counts[item];
  }
  std::vector<std::string> out;
  for (const auto& [item, n] : counts) {
    if (n >= threshold) out.emplace_back(item);
  }
  return out;
}

std::vector<std::string> WeightedVote(std::span<const PredictionSet> sets,
                                      std::span<const double> weights, double threshold) {
  if (sets.size() != weights.size()) {
    throw ArgumentError("weighted vote: " + std::to_string(weights.size()) + " weights for " +
                        std::to_string(sets.size()) + " sets");
  }
  for (double w : weights) {
    if (w < 0.0) throw ArgumentError("weighted vote: negative weight");
  }
  std::map<std::string_view, double> mass;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (const auto& item : sets[i].items) mass[item] += weights[i];
  }
  std::vector<std::string> out;
  for (const auto& [item, m] : mass) {
    if (m >= threshold) out.emplace_back(item);
  }
  return out;
}

}  // namespace multiie
