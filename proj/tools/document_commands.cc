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

#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.h"
#include "multiie/augment.h"
#include "multiie/doc_window.h"
#include "multiie/error.h"
#include "multiie/labels.h"
#include "multiie/text.h"

namespace multiie::cli {
namespace {

using nlohmann::json;

json ParseLine(const std::string& line) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T Get(const json& obj, const char* key) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DataError(std::string("field '") + key + "': " + e.what());
  }
}

// Merges window-level span predictions back into document coordinates.
// Input lines: {"doc_id", "start_offset", "length", "spans": [{"type",
// "start", "end", "score"?}]}; output one line per document.
void MergeSegments(std::istream& in, Output& out) {
  LabelSpace types;
  std::vector<std::string> doc_order;
  std::map<std::string, std::vector<std::pair<Segment, std::vector<TypedSpan>>>> parts;
  ForEachLine(in, [&](std::size_t, const std::string& line) {
    const json seg = ParseLine(line);
    Segment s;
    s.doc_id = Get<std::string>(seg, "doc_id");
    s.start_offset = Get<std::size_t>(seg, "start_offset");
    s.length = Get<std::size_t>(seg, "length");
    std::vector<TypedSpan> spans;
    for (const auto& sp : seg.value("spans", json::array())) {
      spans.push_back({types.Add(Get<std::string>(sp, "type")), Get<std::size_t>(sp, "start"),
                       Get<std::size_t>(sp, "end"), sp.value("score", 1.0)});
    }
    if (!parts.count(s.doc_id)) doc_order.push_back(s.doc_id);
    parts[s.doc_id].emplace_back(std::move(s), std::move(spans));
  });
  for (const auto& id : doc_order) {
    json doc{{"doc_id", id}, {"spans", json::array()}};
    for (const auto& s : Merge(parts[id])) {
      doc["spans"].push_back(
          {{"type", types.name(s.type)}, {"start", s.start}, {"end", s.end}, {"score", s.score}});
    }
    out.Line(doc.dump());
  }
}

// Joins surviving tokens. Neighbours that were adjacent in the source keep
// the original text between them, so spans keep their exact surface.
struct Rebuilt {
  std::string text;
  std::vector<std::size_t> begin;  // code point offset of each surviving token
};

Rebuilt Rebuild(const std::u32string& original, const std::vector<Token>& tokens,
                const std::vector<std::size_t>& kept, const std::vector<std::string>& words) {
  std::u32string text;
  Rebuilt out;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    if (k > 0) {
      const Token& prev = tokens[kept[k - 1]];
      const Token& cur = tokens[kept[k]];
      if (kept[k] == kept[k - 1] + 1) {
        text += original.substr(prev.end, cur.begin - prev.end);
      } else {
        const std::u32string a = DecodeUtf8(words[k - 1]);
        const std::u32string b = DecodeUtf8(words[k]);
        const bool cjk = !a.empty() && !b.empty() && IsCjk(a.back()) && IsCjk(b.front());
        if (!cjk) text += U' ';
      }
    }
    out.begin.push_back(text.size());
    text += DecodeUtf8(words[k]);
  }
  out.text = EncodeUtf8(text);
  return out;
}

EventRecord Augment(const EventRecord& record, const SynonymDictionary& dict, double synonym_prob,
                    double delete_prob, Rng& rng) {
  SeeCorpus single = BuildSeeCorpus(std::span<const EventRecord>(&record, 1));
  const SeeExample& ex = single.examples.front();
  std::vector<TypedSpan> spans = ex.triggers;
  spans.insert(spans.end(), ex.arguments.begin(), ex.arguments.end());
  // Tag each span with its own position so deletion keeps the mapping.
  for (std::size_t i = 0; i < spans.size(); ++i) spans[i].type = i;

  std::vector<std::string> words;
  for (const auto& t : ex.tokens) words.push_back(t.text);
  // Deletion on token indices, so the surviving source tokens stay known.
  std::vector<std::string> index_words(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) index_words[i] = std::to_string(i);
  DeletionResult d = RandomDelete(index_words, spans, delete_prob, rng);
  std::vector<std::size_t> kept;
  std::vector<std::string> survivors;
  for (const auto& w : d.tokens) {
    kept.push_back(std::stoul(w));
    survivors.push_back(words[kept.back()]);
  }
  survivors = SynonymsReplace(survivors, dict, synonym_prob, rng,
                              CoveredTokens(survivors.size(), d.spans));

  const std::u32string original = DecodeUtf8(record.text);
  Rebuilt rebuilt = Rebuild(original, ex.tokens, kept, survivors);

  // New offset of a mention: same distance from its first token's start.
  auto moved = [&](const TypedSpan& span_new, const TypedSpan& span_old, std::size_t old_begin) {
    return rebuilt.begin[span_new.start] + (old_begin - ex.tokens[span_old.start].begin);
  };
  EventRecord out = record;
  out.text = rebuilt.text;
  std::size_t trigger_i = 0, argument_i = ex.triggers.size();
  for (auto& e : out.events) {
    if (e.trigger && !e.trigger->empty()) {
      const std::size_t old_begin = *LocateMention(record.text, *e.trigger, e.trigger_start);
      e.trigger_start = moved(d.spans[trigger_i], spans[trigger_i], old_begin);
      ++trigger_i;
    }
    for (auto& a : e.arguments) {
      const std::size_t old_begin = *LocateMention(record.text, a.mentions.front(), a.start);
      a.start = moved(d.spans[argument_i], spans[argument_i], old_begin);
      ++argument_i;
    }
  }
  return out;
}

}  // namespace

void AddDocumentCommands(CLI::App& app, const GlobalFlags& global, Action& action) {
  struct Flags {
    std::string input = "-";
    std::string output = "-";
    std::size_t window = kDefaultWindow;
    std::size_t stride = kDefaultWindow / 2;
    bool merge = false;
    std::string synonyms;
    double synonym_prob = 0.0;
    double delete_prob = 0.0;
  };
  auto flags = std::make_shared<Flags>();

  auto* split = app.add_subcommand(
      "split-doc", "Cut documents into overlapping windows, or merge window spans back");
  split->add_option("-i,--input", flags->input, "Event records (or span lines with --merge)");
  split->add_option("-o,--output", flags->output, "Output lines, '-' for stdout");
  split->add_option("--window", flags->window, "Window length in characters");
  split->add_option("--stride", flags->stride, "Distance between window starts");
  split->add_flag("--merge", flags->merge, "Merge window span predictions into documents");
  split->callback([&action, flags] {
    action = [flags] {
      Input in(flags->input);
      Output out(flags->output);
      if (flags->merge) {
        MergeSegments(in.stream(), out);
        return;
      }
      WindowBounds(1, flags->window, flags->stride);  // validates the pair
      ForEachLine(in.stream(), [&](std::size_t, const std::string& line) {
        const EventRecord record = ParseEventRecord(line);
        std::size_t k = 0;
        for (const Segment& s : Split(record.id, record.text, flags->window, flags->stride)) {
          out.Line(json{{"doc_id", s.doc_id},
                        {"segment", k++},
                        {"start_offset", s.start_offset},
                        {"length", s.length},
                        {"text", s.text}}
                       .dump());
        }
      });
    };
  });

  auto* aug = app.add_subcommand("augment",
                                 "Synonym replacement and random deletion on event records");
  aug->add_option("-i,--input", flags->input, "Event records, '-' for stdin");
  aug->add_option("-o,--output", flags->output, "Augmented records, '-' for stdout");
  aug->add_option("--synonyms", flags->synonyms, "Synonym dictionary (tab-separated groups)")
      ->check(CLI::ExistingFile);
  aug->add_option("--synonym-prob", flags->synonym_prob, "Per-token replacement probability")
      ->check(CLI::Range(0.0, 1.0));
  aug->add_option("--delete-prob", flags->delete_prob, "Per-token deletion probability")
      ->check(CLI::Range(0.0, 1.0));
  aug->callback([&action, &global, flags] {
    action = [flags, &global] {
      SynonymDictionary dict;
      if (!flags->synonyms.empty()) {
        Input syn(flags->synonyms);
        dict = SynonymDictionary::FromStream(syn.stream());
      }
      Rng rng(global.seed);
      Input in(flags->input);
      Output out(flags->output);
      ForEachLine(in.stream(), [&](std::size_t, const std::string& line) {
        out.Line(FormatEventRecord(Augment(ParseEventRecord(line), dict, flags->synonym_prob,
                                           flags->delete_prob, rng)));
      });
    };
  });
}

}  // namespace multiie::cli
