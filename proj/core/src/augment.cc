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

#include "multiie/augment.h"

#include <algorithm>
#include <random>

#include "multiie/error.h"

namespace multiie {
namespace {

void CheckProbability(double prob, const char* what) {
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw ArgumentError(std::string(what) + ": probability " + std::to_string(prob) +
                        " outside [0, 1]");
  }
}

void CheckSpans(std::size_t length, std::span<const TypedSpan> spans) {
  for (const auto& s : spans) {
    if (s.start > s.end || s.end >= length) {
      throw ArgumentError("span [" + std::to_string(s.start) + ", " + std::to_string(s.end) +
                          "] malformed for a " + std::to_string(length) + "-token sequence");
    }
  }
}

}  // namespace

SynonymDictionary SynonymDictionary::FromStream(std::istream& in) {
  SynonymDictionary dict;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> group;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t tab = line.find('\t', pos);
      if (tab == std::string::npos) tab = line.size();
      if (tab > pos) group.push_back(line.substr(pos, tab - pos));
      pos = tab + 1;
    }
    dict.AddGroup(group);
  }
  return dict;
}

void SynonymDictionary::AddGroup(std::span<const std::string> group) {
  for (const auto& token : group) {
    for (const auto& other : group) {
      if (other == token) continue;
      auto& list = synonyms_[token];
      if (std::find(list.begin(), list.end(), other) == list.end()) list.push_back(other);
    }
  }
}

const std::vector<std::string>* SynonymDictionary::Synonyms(std::string_view token) const {
  auto it = synonyms_.find(token);
  return it == synonyms_.end() ? nullptr : &it->second;
}

std::vector<std::string> SynonymDictionary::Tokens() const {
  std::vector<std::string> out;
  for (const auto& [token, list] : synonyms_) out.push_back(token);
  return out;
}

std::vector<std::string> SynonymsReplace(std::span<const std::string> tokens,
                                         const SynonymDictionary& dictionary, double prob, Rng& rng,
                                         const std::vector<bool>& frozen) {
  CheckProbability(prob, "synonym replacement");
  if (!frozen.empty() && frozen.size() != tokens.size()) {
    throw ArgumentError("synonym replacement: frozen mask length differs from token count");
  }
  std::vector<std::string> out(tokens.begin(), tokens.end());
  if (prob == 0.0 || dictionary.empty()) return out;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const bool replace = coin(rng) < prob;
    if (!replace || (!frozen.empty() && frozen[i])) continue;
    const auto* options = dictionary.Synonyms(out[i]);
    if (options == nullptr) continue;
    std::uniform_int_distribution<std::size_t> pick(0, options->size() - 1);
    out[i] = (*options)[pick(rng)];
  }
  return out;
}

std::vector<bool> CoveredTokens(std::size_t length, std::span<const TypedSpan> spans) {
  CheckSpans(length, spans);
  std::vector<bool> covered(length, false);
  for (const auto& s : spans) {
    for (std::size_t j = s.start; j <= s.end; ++j) covered[j] = true;
  }
  return covered;
}

DeletionResult RandomDelete(std::span<const std::string> tokens, std::span<const TypedSpan> spans,
                            double prob, Rng& rng) {
  CheckProbability(prob, "random deletion");
  std::vector<bool> covered = CoveredTokens(tokens.size(), spans);
  DeletionResult out;
  if (prob == 0.0) {
    out.tokens.assign(tokens.begin(), tokens.end());
    out.spans.assign(spans.begin(), spans.end());
    return out;
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::size_t> new_index(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const bool drop = coin(rng) < prob && !covered[i];
    new_index[i] = out.tokens.size();
    if (!drop) out.tokens.push_back(tokens[i]);
  }
  for (TypedSpan s : spans) {
    s.start = new_index[s.start];
    s.end = new_index[s.end];
    out.spans.push_back(s);
  }
  return out;
}

}  // namespace multiie
