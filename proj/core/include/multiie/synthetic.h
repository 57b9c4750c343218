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

#ifndef MULTIIE_SYNTHETIC_H_
#define MULTIIE_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>

#include "multiie/dee_model.h"
#include "multiie/see_model.h"

namespace multiie {

// Toy corpora for overfit checks, benchmarks and fixtures. Every role has its
// own argument vocabulary and every event type its own trigger words, so a
// per-token model can in principle fit them exactly.

struct SyntheticSeeOptions {
  std::size_t sentences = 50;
  std::size_t event_types = 3;
  std::size_t roles_per_type = 2;
  std::size_t filler_words = 20;
  std::uint64_t seed = 7;
};

SeeCorpus SyntheticSeeCorpus(const SyntheticSeeOptions& options);

struct SyntheticDeeOptions {
  std::size_t documents = 20;
  std::size_t event_types = 4;
  std::size_t roles_per_type = 2;
  std::size_t max_events = 3;  // events per document, each of a distinct type
  std::size_t filler_words = 20;
  std::size_t filler_per_gap = 3;
  std::uint64_t seed = 11;
};

DeeCorpus SyntheticDeeCorpus(const SyntheticDeeOptions& options);

}  // namespace multiie

#endif  // MULTIIE_SYNTHETIC_H_
