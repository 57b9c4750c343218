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

#ifndef MULTIIE_AUGMENT_H_
#define MULTIIE_AUGMENT_H_

#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multiie/pointer.h"
#include "multiie/tensor.h"

namespace multiie {

// Synonym groups. A token's synonyms are the other members of every group it
// appears in.
class SynonymDictionary {
 public:
  // One group per line, tokens separated by tabs. Blank lines and lines
  // starting with '#' are skipped.
  static SynonymDictionary FromStream(std::istream& in);

  void AddGroup(std::span<const std::string> group);
  // nullptr when the token has no synonyms.
  const std::vector<std::string>* Synonyms(std::string_view token) const;
  bool empty() const { return synonyms_.empty(); }
  // Every token that has synonyms, in sorted order.
  std::vector<std::string> Tokens() const;

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> synonyms_;
};

// Each token whose `frozen` flag is unset (all unset when `frozen` is empty)
// is replaced with probability `prob` by a uniformly chosen synonym. One
// uniform draw per token keeps the random stream independent of the
// dictionary contents. Throws ArgumentError unless prob is in [0, 1].
std::vector<std::string> SynonymsReplace(std::span<const std::string> tokens,
                                         const SynonymDictionary& dictionary, double prob, Rng& rng,
                                         const std::vector<bool>& frozen = {});

struct DeletionResult {
  std::vector<std::string> tokens;
  std::vector<TypedSpan> spans;
};

// Drops each token not covered by any span with probability `prob`; covered
// tokens always survive, and spans are re-indexed to the shortened sequence.
// Spans may overlap. Throws ArgumentError for prob outside [0, 1] or a span
// with start > end or end past the sequence.
DeletionResult RandomDelete(std::span<const std::string> tokens, std::span<const TypedSpan> spans,
                            double prob, Rng& rng);

// True for tokens covered by at least one span.
std::vector<bool> CoveredTokens(std::size_t length, std::span<const TypedSpan> spans);

}  // namespace multiie

#endif  // MULTIIE_AUGMENT_H_
