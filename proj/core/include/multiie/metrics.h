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

#ifndef MULTIIE_METRICS_H_
#define MULTIIE_METRICS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multiie/schema.h"

namespace multiie {

// An event argument. Gold arguments may carry several annotated mentions;
// predictions carry exactly one.
struct Argument {
  std::string role;
  std::vector<std::string> mentions;

  const std::string& text() const { return mentions.front(); }
  bool operator==(const Argument&) const = default;
  auto operator<=>(const Argument&) const = default;
};

struct Event {
  std::string event_type;
  std::vector<Argument> arguments;
  std::optional<std::string> trigger;

  bool operator==(const Event&) const = default;
  auto operator<=>(const Event&) const = default;
};

// Events of one sentence (SEE) or one document (DEE).
struct EventDocument {
  std::string id;
  std::vector<Event> events;
};

// Relations of one sentence, keyed by its text.
struct RelationSentence {
  std::string text;
  std::vector<Relation> relations;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double matched = 0.0;  // true-positive mass (may be fractional for SEE)
  std::size_t predicted = 0;
  std::size_t gold = 0;
};

// P = matched / predicted, R = matched / gold, zero when the denominator is
// zero; F1 is their harmonic mean, or 0 when P + R = 0.
Prf MakePrf(double matched, std::size_t predicted, std::size_t gold);

struct ScoreReport {
  Prf overall;
  std::map<std::string, Prf> per_type;
};

enum class MatchStrategy { kOptimal, kGreedy };

// Character-level F1 between two strings (code points, whitespace ignored,
// multiset overlap).
double CharF1(std::string_view pred, std::string_view gold);

// A predicted relation is correct iff an unconsumed gold relation agrees on
// subject, predicate and every slot key/value.
Prf ReF1(std::span<const Relation> pred, std::span<const Relation> gold);
ScoreReport ReF1(std::span<const RelationSentence> pred, std::span<const RelationSentence> gold);

// Character-level argument F1: per (event type, role) group, predicted and
// gold arguments are paired one-to-one to maximize the summed score, where a
// pair's score is the best CharF1 over the gold argument's mentions.
Prf SeeF1(std::span<const Event> pred, std::span<const Event> gold);
ScoreReport SeeF1(std::span<const EventDocument> pred, std::span<const EventDocument> gold);

// Event-level matching: within each (document, event type), gold events are
// matched to distinct predicted events maximizing exactly-correct arguments.
Prf DeeF1(std::span<const Event> pred, std::span<const Event> gold,
          MatchStrategy strategy = MatchStrategy::kOptimal);
ScoreReport DeeF1(std::span<const EventDocument> pred, std::span<const EventDocument> gold,
                  MatchStrategy strategy = MatchStrategy::kOptimal);

// Number of exactly-correct arguments of `pred` against `gold` (one-to-one).
std::size_t CorrectArguments(const Event& pred, const Event& gold);

// Arithmetic mean of the three subtask F1 scores. Throws ArgumentError if
// any is missing.
double MacroAverage(std::optional<double> re, std::optional<double> see,
                    std::optional<double> dee);

}  // namespace multiie

#endif  // MULTIIE_METRICS_H_
