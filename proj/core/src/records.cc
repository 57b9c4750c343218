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

#include "multiie/records.h"

#include <map>

#include <json.hpp>

#include "multiie/error.h"
#include "multiie/text.h"

namespace multiie {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <class J>
J ParseJson(std::string_view line) {
  try {
    return J::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
}

template <class J>
const J& Field(const J& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DataError(where + ": missing field '" + key + "'");
  return *it;
}

template <class J>
std::string StringField(const J& obj, const char* key, const std::string& where) {
  const J& v = Field(obj, key, where);
  if (!v.is_string()) throw DataError(where + ": field '" + key + "' must be a string");
  return v.template get<std::string>();
}

template <class J>
std::optional<std::size_t> OffsetField(const J& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer() || it->template get<long long>() < 0) {
    throw DataError(where + ": field '" + key + "' must be a non-negative integer");
  }
  return it->template get<std::size_t>();
}

// NFC on every string and key, recursively.
json NormalizeStrings(const json& v) {
  if (v.is_string()) return NormalizeNfc(v.get<std::string>());
  if (v.is_array()) {
    json out = json::array();
    for (const auto& e : v) out.push_back(NormalizeStrings(e));
    return out;
  }
  if (v.is_object()) {
    json out = json::object();
    for (const auto& [k, e] : v.items()) out[NormalizeNfc(k)] = NormalizeStrings(e);
    return out;
  }
  return v;
}

}  // namespace

void ForEachLine(std::istream& in,
                 const std::function<void(std::size_t, const std::string&)>& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string prefix = "line " + std::to_string(number) + ": ";
    try {
      fn(number, line);
    } catch (const DataError& e) {
      throw DataError(prefix + e.what());
    } catch (const SchemaError& e) {
      throw SchemaError(prefix + e.what());
    } catch (const ArgumentError& e) {
      throw ArgumentError(prefix + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError(prefix + e.what());
    } catch (const ShapeError& e) {
      throw ShapeError(prefix + e.what());
    } catch (const TrainingError& e) {
      throw TrainingError(prefix + e.what());
    }
  }
}

RelationSentence ParseRelationRecord(std::string_view line) {
  const ordered_json record = ParseJson<ordered_json>(line);
  if (!record.is_object()) throw DataError("relation record must be a JSON object");
  RelationSentence out;
  out.text = Canonicalize(StringField(record, "text", "relation record"));
  const std::string where = "record '" + out.text + "'";
  auto list = record.find("spo_list");
  if (list == record.end()) return out;
  if (!list->is_array()) throw DataError(where + ": spo_list must be an array");
  for (const auto& spo : *list) {
    if (!spo.is_object()) throw DataError(where + ": spo_list entries must be objects");
    Relation r;
    r.subject = Canonicalize(StringField(spo, "subject", where));
    r.predicate = Canonicalize(StringField(spo, "predicate", where));
    if (auto it = spo.find("subject_type"); it != spo.end() && it->is_string()) {
      r.subject_type = Canonicalize(it->get<std::string>());
    }
    const auto& object = Field(spo, "object", where);
    if (!object.is_object() || object.empty()) {
      throw DataError(where + ": object of predicate '" + r.predicate +
                      "' must be a non-empty map");
    }
    const ordered_json* types = nullptr;
    if (auto it = spo.find("object_type"); it != spo.end() && it->is_object()) types = &*it;
    for (const auto& [key, value] : object.items()) {
      if (!value.is_string()) {
        throw DataError(where + ": object slot '" + key + "' must be a string");
      }
      ObjectSlot slot{Canonicalize(key), Canonicalize(value.get<std::string>()), ""};
      if (types != nullptr) {
        if (auto t = types->find(key); t != types->end() && t->is_string()) {
          slot.type = Canonicalize(t->get<std::string>());
        }
      }
      r.object.push_back(std::move(slot));
    }
    out.relations.push_back(std::move(r));
  }
  return out;
}

std::string FormatRelationRecord(const RelationSentence& sentence) {
  json record;
  record["text"] = sentence.text;
  record["spo_list"] = json::array();
  for (const auto& r : sentence.relations) {
    json spo;
    spo["subject"] = r.subject;
    spo["subject_type"] = r.subject_type;
    spo["predicate"] = r.predicate;
    spo["object"] = json::object();
    spo["object_type"] = json::object();
    for (const auto& s : r.object) {
      spo["object"][s.key] = s.value;
      spo["object_type"][s.key] = s.type;
    }
    record["spo_list"].push_back(std::move(spo));
  }
  return record.dump();
}

EventRecord ParseEventRecord(std::string_view line) {
  const ordered_json record = ParseJson<ordered_json>(line);
  if (!record.is_object()) throw DataError("event record must be a JSON object");
  EventRecord out;
  out.text = NormalizeNfc(StringField(record, "text", "event record"));
  if (auto it = record.find("id"); it != record.end()) {
    if (it->is_string()) {
      out.id = it->get<std::string>();
    } else if (it->is_number_integer()) {
      out.id = std::to_string(it->get<long long>());
    } else {
      throw DataError("event record: id must be a string or integer");
    }
  } else {
    out.id = out.text;
  }
  if (auto it = record.find("title"); it != record.end() && it->is_string()) {
    out.title = NormalizeNfc(it->get<std::string>());
  }
  const std::string where = "record '" + out.id + "'";
  auto list = record.find("event_list");
  if (list == record.end() || list->is_null()) return out;
  if (!list->is_array()) throw DataError(where + ": event_list must be an array");
  for (const auto& ev : *list) {
    if (!ev.is_object()) throw DataError(where + ": event_list entries must be objects");
    EventAnnotation a;
    a.event_type = Canonicalize(StringField(ev, "event_type", where));
    if (auto it = ev.find("trigger"); it != ev.end() && !it->is_null()) {
      if (!it->is_string()) throw DataError(where + ": trigger must be a string");
      a.trigger = NormalizeNfc(it->get<std::string>());
      a.trigger_start = OffsetField(ev, "trigger_start_index", where);
    }
    auto args = ev.find("arguments");
    if (args != ev.end() && !args->is_null()) {
      if (!args->is_array()) throw DataError(where + ": arguments must be an array");
      for (const auto& arg : *args) {
        if (!arg.is_object()) throw DataError(where + ": arguments must be objects");
        ArgumentMention m;
        m.role = Canonicalize(StringField(arg, "role", where));
        const auto& value = Field(arg, "argument", where);
        if (value.is_string()) {
          m.mentions.push_back(NormalizeNfc(value.get<std::string>()));
        } else if (value.is_array() && !value.empty()) {
          for (const auto& v : value) {
            if (!v.is_string()) throw DataError(where + ": argument mentions must be strings");
            m.mentions.push_back(NormalizeNfc(v.get<std::string>()));
          }
        } else {
          throw DataError(where + ": argument must be a string or a non-empty list");
        }
        m.start = OffsetField(arg, "argument_start_index", where);
        a.arguments.push_back(std::move(m));
      }
    }
    out.events.push_back(std::move(a));
  }
  return out;
}

std::string FormatEventRecord(const EventRecord& record) {
  json out;
  out["id"] = record.id;
  out["text"] = record.text;
  if (record.title) out["title"] = *record.title;
  out["event_list"] = json::array();
  for (const auto& e : record.events) {
    json ev;
    ev["event_type"] = e.event_type;
    if (e.trigger) ev["trigger"] = *e.trigger;
    if (e.trigger_start) ev["trigger_start_index"] = *e.trigger_start;
    ev["arguments"] = json::array();
    for (const auto& a : e.arguments) {
      json arg;
      arg["role"] = a.role;
      if (a.mentions.size() == 1) {
        arg["argument"] = a.mentions.front();
      } else {
        arg["argument"] = a.mentions;
      }
      if (a.start) arg["argument_start_index"] = *a.start;
      ev["arguments"].push_back(std::move(arg));
    }
    out["event_list"].push_back(std::move(ev));
  }
  return out.dump();
}

EventDocument ToEventDocument(const EventRecord& record) {
  EventDocument doc{record.id, {}};
  for (const auto& e : record.events) {
    Event ev;
    ev.event_type = e.event_type;
    if (e.trigger) ev.trigger = Canonicalize(*e.trigger);
    for (const auto& a : e.arguments) {
      Argument arg{a.role, {}};
      for (const auto& m : a.mentions) arg.mentions.push_back(Canonicalize(m));
      ev.arguments.push_back(std::move(arg));
    }
    doc.events.push_back(std::move(ev));
  }
  return doc;
}

EventRecord FromEventDocument(const EventDocument& doc, const std::string& text) {
  EventRecord record;
  record.id = doc.id;
  record.text = text;
  for (const auto& e : doc.events) {
    EventAnnotation a;
    a.event_type = e.event_type;
    a.trigger = e.trigger;
    for (const auto& arg : e.arguments) a.arguments.push_back({arg.role, arg.mentions, std::nullopt});
    record.events.push_back(std::move(a));
  }
  return record;
}

std::optional<std::size_t> LocateMention(const std::string& text, const std::string& mention,
                                         std::optional<std::size_t> hint) {
  const std::u32string t = DecodeUtf8(text);
  const std::u32string m = DecodeUtf8(mention);
  if (m.empty()) return std::nullopt;
  if (hint && *hint + m.size() <= t.size() && t.compare(*hint, m.size(), m) == 0) return hint;
  const auto pos = t.find(m);
  if (pos == std::u32string::npos) return std::nullopt;
  return pos;
}

namespace {

struct Located {
  std::size_t begin;  // code points
  std::size_t end;
};

Located Locate(const EventRecord& record, const std::string& mention,
               std::optional<std::size_t> hint, const char* what) {
  auto pos = LocateMention(record.text, mention, hint);
  if (!pos) {
    throw DataError("record '" + record.id + "': " + what + " '" + mention +
                    "' not found in text");
  }
  return {*pos, *pos + CodepointLength(mention)};
}

TypedSpan TokenSpan(const EventRecord& record, const std::vector<Token>& tokens, Located loc,
                    std::size_t type) {
  // Whitespace at the mention edges is not part of any token; shrink to the
  // first and last covered tokens.
  std::optional<std::size_t> first, last;
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    if (tokens[j].end > loc.begin && tokens[j].begin < loc.end) {
      if (!first) first = j;
      last = j;
    }
  }
  if (!first) {
    throw DataError("record '" + record.id + "': mention at offset " + std::to_string(loc.begin) +
                    " covers no token");
  }
  return {type, *first, *last, 1.0};
}

}  // namespace

SeeCorpus BuildSeeCorpus(std::span<const EventRecord> records) {
  SeeCorpus corpus;
  for (const auto& record : records) {
    SeeExample ex;
    ex.id = record.id;
    ex.text = record.text;
    ex.tokens = Tokenize(record.text);
    for (const auto& e : record.events) {
      const std::size_t type = corpus.event_types.Add(e.event_type);
      if (e.trigger && !e.trigger->empty()) {
        ex.triggers.push_back(
            TokenSpan(record, ex.tokens, Locate(record, *e.trigger, e.trigger_start, "trigger"),
                      type));
      }
      for (const auto& a : e.arguments) {
        const std::size_t label = corpus.argument_types.Add(JoinTypeRole(e.event_type, a.role));
        ex.arguments.push_back(TokenSpan(
            record, ex.tokens, Locate(record, a.mentions.front(), a.start, "argument"), label));
      }
    }
    corpus.examples.push_back(std::move(ex));
  }
  return corpus;
}

DeeCorpus BuildDeeCorpus(std::span<const EventRecord> records) {
  DeeCorpus corpus;
  for (const auto& record : records) {
    DeeDocument doc;
    doc.id = record.id;
    doc.text = record.text;
    for (const auto& e : record.events) {
      corpus.event_types.Add(e.event_type);
      std::vector<CharSpan> spans;
      for (const auto& a : e.arguments) {
        const std::size_t label = corpus.argument_types.Add(JoinTypeRole(e.event_type, a.role));
        Located loc = Locate(record, a.mentions.front(), a.start, "argument");
        spans.push_back({label, loc.begin, loc.end});
      }
      doc.events.push_back(std::move(spans));
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

std::vector<std::string> ExplodeRecord(std::string_view line) {
  json record = NormalizeStrings(ParseJson<json>(line));
  std::vector<std::string> items;
  const char* field = nullptr;
  if (record.is_object()) {
    for (const char* f : {"spo_list", "event_list"}) {
      auto it = record.find(f);
      if (it != record.end() && it->is_array()) {
        field = f;
        break;
      }
    }
  }
  if (field == nullptr) {
    items.push_back(json{{"record", record}}.dump());
    return items;
  }
  json list = std::move(record[field]);
  record.erase(field);
  items.push_back(json{{"record", record}, {"field", field}}.dump());
  for (auto& element : list) {
    items.push_back(json{{"record", record}, {"field", field}, {"item", element}}.dump());
  }
  return items;
}

std::vector<std::string> RegroupRecords(std::span<const std::string> items) {
  std::vector<json> records;
  std::map<std::string, std::size_t> index;
  for (const auto& text : items) {
    json item = ParseJson<json>(text);
    if (!item.is_object() || !item.contains("record")) {
      throw DataError("vote item lacks its record: " + text);
    }
    const std::string key = item["record"].dump();
    auto [it, inserted] = index.try_emplace(key, records.size());
    if (inserted) records.push_back(item["record"]);
    json& record = records[it->second];
    if (item.contains("field")) {
      const std::string field = item["field"].get<std::string>();
      if (!record.contains(field)) record[field] = json::array();
      if (item.contains("item")) record[field].push_back(item["item"]);
    }
  }
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.dump());
  return out;
}

std::string CanonicalRecord(std::string_view line) {
  return NormalizeStrings(ParseJson<json>(line)).dump();
}

namespace {

json PrfJson(const Prf& p) {
  return json{{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1},
              {"matched", p.matched},     {"predicted", p.predicted}, {"gold", p.gold}};
}

}  // namespace

std::string FormatScoreReport(const ScoreReport& report) {
  json out;
  out["overall"] = PrfJson(report.overall);
  out["per_type"] = json::object();
  for (const auto& [type, prf] : report.per_type) out["per_type"][type] = PrfJson(prf);
  return out.dump();
}

}  // namespace multiie
