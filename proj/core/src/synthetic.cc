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

#include "multiie/synthetic.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "multiie/error.h"
#include "multiie/text.h"

namespace multiie {
namespace {

std::size_t Uniform(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Argument words of role r of event type t: 1 or 2 tokens.
std::vector<std::string> ArgumentWords(std::size_t t, std::size_t r, Rng& rng) {
  const std::string stem = "e" + std::to_string(t) + "r" + std::to_string(r);
  const std::size_t k = Uniform(rng, 4);
  if (Uniform(rng, 2) == 0) return {stem + "w" + std::to_string(k)};
  return {stem + "h" + std::to_string(k), stem + "t" + std::to_string(Uniform(rng, 4))};
}

std::string Filler(std::size_t vocab, Rng& rng) { return "f" + std::to_string(Uniform(rng, vocab)); }

// Appends words to a token list, tracking the token index of each.
struct Builder {
  std::vector<std::string> words;

  std::pair<std::size_t, std::size_t> Append(const std::vector<std::string>& w) {
    const std::size_t start = words.size();
    words.insert(words.end(), w.begin(), w.end());
    return {start, words.size() - 1};
  }
  std::string Text() const {
    std::string out;
    for (const auto& w : words) {
      if (!out.empty()) out += ' ';
      out += w;
    }
    return out;
  }
};

std::string EventTypeName(std::size_t t) { return "Type" + std::to_string(t); }
std::string RoleName(std::size_t r) { return "role" + std::to_string(r); }

}  // namespace

SeeCorpus SyntheticSeeCorpus(const SyntheticSeeOptions& options) {
  if (options.event_types == 0 || options.roles_per_type == 0 || options.filler_words == 0) {
    throw ArgumentError("synthetic corpus: counts must be positive");
  }
  Rng rng(options.seed);
  SeeCorpus corpus;
  for (std::size_t t = 0; t < options.event_types; ++t) {
    corpus.event_types.Add(EventTypeName(t));
    for (std::size_t r = 0; r < options.roles_per_type; ++r) {
      corpus.argument_types.Add(JoinTypeRole(EventTypeName(t), RoleName(r)));
    }
  }
  for (std::size_t i = 0; i < options.sentences; ++i) {
    const std::size_t t = i % options.event_types;
    // Pieces: the trigger, each role's argument, and some filler, shuffled.
    std::vector<std::size_t> pieces(options.roles_per_type + 1);
    std::iota(pieces.begin(), pieces.end(), 0);
    std::shuffle(pieces.begin(), pieces.end(), rng);
    Builder b;
    SeeExample ex;
    ex.id = "see-" + std::to_string(i);
    b.Append({Filler(options.filler_words, rng)});
    for (std::size_t piece : pieces) {
      if (piece == 0) {
        auto [s, e] = b.Append({"trig" + std::to_string(t) + "x" + std::to_string(Uniform(rng, 3))});
        ex.triggers.push_back({t, s, e, 1.0});
      } else {
        const std::size_t r = piece - 1;
        auto [s, e] = b.Append(ArgumentWords(t, r, rng));
        ex.arguments.push_back({t * options.roles_per_type + r, s, e, 1.0});
      }
      const std::size_t gap = Uniform(rng, 3);
      for (std::size_t g = 0; g < gap; ++g) b.Append({Filler(options.filler_words, rng)});
    }
    ex.text = b.Text();
    ex.tokens = Tokenize(ex.text);
    corpus.examples.push_back(std::move(ex));
  }
  return corpus;
}

DeeCorpus SyntheticDeeCorpus(const SyntheticDeeOptions& options) {
  if (options.event_types == 0 || options.roles_per_type == 0 || options.max_events == 0 ||
      options.filler_words == 0) {
    throw ArgumentError("synthetic corpus: counts must be positive");
  }
  if (options.max_events > options.event_types) {
    throw ArgumentError("synthetic corpus: need at least max_events event types");
  }
  Rng rng(options.seed);
  DeeCorpus corpus;
  for (std::size_t t = 0; t < options.event_types; ++t) {
    corpus.event_types.Add(EventTypeName(t));
    for (std::size_t r = 0; r < options.roles_per_type; ++r) {
      corpus.argument_types.Add(JoinTypeRole(EventTypeName(t), RoleName(r)));
    }
  }
  std::vector<std::size_t> types(options.event_types);
  std::iota(types.begin(), types.end(), 0);
  for (std::size_t i = 0; i < options.documents; ++i) {
    const std::size_t count = 1 + Uniform(rng, options.max_events);
    std::shuffle(types.begin(), types.end(), rng);
    Builder b;
    std::vector<std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>>> events;
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t t = types[k];
      std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> args;
      for (std::size_t r = 0; r < options.roles_per_type; ++r) {
        const std::size_t gap = Uniform(rng, options.filler_per_gap + 1);
        for (std::size_t g = 0; g < gap; ++g) b.Append({Filler(options.filler_words, rng)});
        args.push_back({t * options.roles_per_type + r, b.Append(ArgumentWords(t, r, rng))});
      }
      events.push_back(std::move(args));
    }
    b.Append({Filler(options.filler_words, rng)});
    DeeDocument doc;
    doc.id = "dee-" + std::to_string(i);
    doc.text = b.Text();
    const std::vector<Token> tokens = Tokenize(doc.text);
    for (const auto& args : events) {
      std::vector<CharSpan> spans;
      for (const auto& [type, range] : args) {
        spans.push_back({type, tokens[range.first].begin, tokens[range.second].end});
      }
      doc.events.push_back(std::move(spans));
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace multiie
