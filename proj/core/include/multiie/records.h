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

#ifndef MULTIIE_RECORDS_H_
#define MULTIIE_RECORDS_H_

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multiie/dee_model.h"
#include "multiie/metrics.h"
#include "multiie/schema.h"
#include "multiie/see_model.h"

namespace multiie {

// Calls `fn(line_number, line)` for every non-blank line (1-based numbers).
// Exceptions thrown by `fn` are rethrown with "line N: " prepended, keeping
// their type.
void ForEachLine(std::istream& in,
                 const std::function<void(std::size_t, const std::string&)>& fn);

// Relation records: {"text", "spo_list": [{"subject", "subject_type",
// "predicate", "object": {slot: value}, "object_type": {slot: type}}]}.
// Strings are canonicalized (NFC, trimmed); slot order follows the file.
// Throws DataError on malformed JSON or missing fields.
RelationSentence ParseRelationRecord(std::string_view line);
// Compact JSON with sorted keys.
std::string FormatRelationRecord(const RelationSentence& sentence);

struct ArgumentMention {
  std::string role;
  std::vector<std::string> mentions;  // first is the primary mention
  std::optional<std::size_t> start;   // code point offset in text
};

struct EventAnnotation {
  std::string event_type;
  std::optional<std::string> trigger;
  std::optional<std::size_t> trigger_start;
  std::vector<ArgumentMention> arguments;
};

// Event records: {"id", "text", "title"?, "event_list": [{"event_type",
// "trigger"?, "trigger_start_index"?, "arguments": [{"role", "argument",
// "argument_start_index"?}]}]}. "argument" is a string or a list of
// alternative mentions. An empty event_list is a negative sample.
struct EventRecord {
  std::string id;
  std::optional<std::string> title;
  std::string text;  // NFC-normalized, not trimmed (offsets refer to it)
  std::vector<EventAnnotation> events;
};

EventRecord ParseEventRecord(std::string_view line);
std::string FormatEventRecord(const EventRecord& record);

// Evaluation form of a record.
EventDocument ToEventDocument(const EventRecord& record);
// Record form of predictions on `text`.
EventRecord FromEventDocument(const EventDocument& doc, const std::string& text);

// Code point offset of `mention` in `text`: `hint` when the text matches
// there, else the first occurrence. std::nullopt when absent.
std::optional<std::size_t> LocateMention(const std::string& text, const std::string& mention,
                                         std::optional<std::size_t> hint);

// Token-level corpora. Label spaces grow from the records in order of first
// appearance. A mention maps to the tokens covering it. Throws DataError
// naming the record when a mention is empty or cannot be found in its text.
SeeCorpus BuildSeeCorpus(std::span<const EventRecord> records);
DeeCorpus BuildDeeCorpus(std::span<const EventRecord> records);

// Voting items. A record line becomes one item per element of its
// "spo_list" or "event_list" plus one presence item for the record itself;
// other JSON lines become a single item. Items are canonical JSON (sorted
// keys, NFC strings), so equal content gives equal strings.
std::vector<std::string> ExplodeRecord(std::string_view line);
// Inverse of ExplodeRecord over items given in the order records should
// appear: items of one record are gathered into a single line.
std::vector<std::string> RegroupRecords(std::span<const std::string> items);
// Parse -> canonical JSON: sorted keys, NFC strings.
std::string CanonicalRecord(std::string_view line);

// ScoreReport as JSON text.
std::string FormatScoreReport(const ScoreReport& report);

}  // namespace multiie

#endif  // MULTIIE_RECORDS_H_
