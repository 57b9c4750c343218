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

#include "multiie/schema.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "multiie/error.h"

namespace multiie {

const ObjectSlot* Relation::FindSlot(std::string_view key) const {
  for (const auto& slot : object) {
    if (slot.key == key) return &slot;
  }
  return nullptr;
}

const std::string* SchemaEntry::SlotType(std::string_view key) const {
  for (const auto& [k, type] : slots) {
    if (k == key) return &type;
  }
  return nullptr;
}

void SchemaSet::Add(SchemaEntry entry) {
  if (entry.predicate.empty()) throw SchemaError("schema: empty predicate");
  if (entry.predicate.find(kPredicateSeparator) != std::string::npos) {
    throw SchemaError("schema: predicate '" + entry.predicate +
                      "' contains the generated-predicate separator '-'");
  }
  if (index_.contains(entry.predicate)) {
    throw SchemaError("schema: duplicate predicate '" + entry.predicate + "'");
  }
  if (entry.slots.empty()) {
    throw SchemaError("schema: predicate '" + entry.predicate + "' has no object slots");
  }
  std::set<std::string> keys;
  for (const auto& [key, type] : entry.slots) {
    if (!keys.insert(key).second) {
      throw SchemaError("schema: duplicate slot '" + key + "' in '" + entry.predicate + "'");
    }
  }
  if (entry.IsMultiSlot()) {
    auto it = std::find_if(entry.slots.begin(), entry.slots.end(),
                           [](const auto& s) { return s.first == kValueSlot; });
    if (it == entry.slots.end()) {
      throw SchemaError("schema: multi-slot predicate '" + entry.predicate + "' lacks @value");
    }
    std::rotate(entry.slots.begin(), it, it + 1);
    for (std::size_t i = 1; i < entry.slots.size(); ++i) {
      if (index_.contains(entry.slots[i].first)) {
        throw SchemaError("schema: slot key '" + entry.slots[i].first +
                          "' collides with a predicate name");
      }
    }
  }
  if (IsSecondarySlotKey(entry.predicate)) {
    throw SchemaError("schema: predicate '" + entry.predicate + "' collides with a slot key");
  }
  index_.emplace(entry.predicate, entries_.size());
  entries_.push_back(std::move(entry));
}

SchemaSet SchemaSet::FromJsonLines(std::string_view content) {
  SchemaSet schema;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("schema line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      SchemaEntry entry;
      entry.predicate = j.at("predicate").get<std::string>();
      entry.subject_type = j.value("subject_type", "");
      const auto& object_type = j.at("object_type");
      if (object_type.is_string()) {
        entry.slots.emplace_back(std::string(kValueSlot), object_type.get<std::string>());
      } else {
        for (const auto& [key, type] : object_type.items()) {
          entry.slots.emplace_back(key, type.get<std::string>());
        }
      }
      schema.Add(std::move(entry));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("schema line " + std::to_string(line_no) + ": " + e.what());
    } catch (const SchemaError& e) {
      throw SchemaError("schema line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return schema;
}

const SchemaEntry* SchemaSet::Find(std::string_view predicate) const {
  auto it = index_.find(predicate);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

bool SchemaSet::IsSecondarySlotKey(std::string_view key) const {
  for (const auto& e : entries_) {
    for (std::size_t i = 1; i < e.slots.size(); ++i) {
      if (e.slots[i].first == key) return true;
    }
  }
  return false;
}

void ValidateRelation(const Relation& relation, const SchemaSet& schema) {
  if (relation.object.empty()) {
    throw ArgumentError("relation '" + relation.predicate + "' has no object slots");
  }
  const SchemaEntry* entry = schema.Find(relation.predicate);
  if (entry == nullptr) throw SchemaError("unknown predicate '" + relation.predicate + "'");
  std::set<std::string_view> seen;
  for (const auto& slot : relation.object) {
    if (!seen.insert(slot.key).second) {
      throw ArgumentError("relation '" + relation.predicate + "' repeats slot '" + slot.key + "'");
    }
    if (entry->IsMultiSlot() && entry->SlotType(slot.key) == nullptr) {
      throw SchemaError("slot '" + slot.key + "' not in schema for '" + relation.predicate + "'");
    }
  }
  if (entry->IsMultiSlot() && relation.FindSlot(kValueSlot) == nullptr) {
    throw SchemaError("relation '" + relation.predicate + "' lacks the @value slot");
  }
  if (!entry->IsMultiSlot() && relation.object.size() != 1) {
    throw SchemaError("single-slot predicate '" + relation.predicate + "' given " +
                      std::to_string(relation.object.size()) + " slots");
  }
}

Relation CanonicalSlotOrder(const Relation& relation, const SchemaSet& schema) {
  ValidateRelation(relation, schema);
  const SchemaEntry* entry = schema.Find(relation.predicate);
  if (!entry->IsMultiSlot()) return relation;
  Relation out = relation;
  out.object.clear();
  for (const auto& [key, type] : entry->slots) {
    if (const ObjectSlot* s = relation.FindSlot(key)) out.object.push_back(*s);
  }
  return out;
}

std::vector<Relation> Disintegrate(const Relation& relation, const SchemaSet& schema) {
  ValidateRelation(relation, schema);
  const SchemaEntry* entry = schema.Find(relation.predicate);
  if (!entry->IsMultiSlot()) return {relation};

  const ObjectSlot& pivot = *relation.FindSlot(kValueSlot);
  std::vector<Relation> out;
  out.reserve(2 * relation.object.size() - 1);
  out.push_back({relation.subject,
                 relation.subject_type,
                 relation.predicate,
                 {{std::string(kValueSlot), pivot.value, pivot.type}}});
  for (const auto& slot : relation.object) {
    if (slot.key == kValueSlot) continue;
    std::string generated = relation.predicate;
    generated += kPredicateSeparator;
    generated += slot.key;
    out.push_back({relation.subject,
                   relation.subject_type,
                   std::move(generated),
                   {{std::string(kValueSlot), slot.value, slot.type}}});
    out.push_back(
        {pivot.value, pivot.type, slot.key, {{std::string(kValueSlot), slot.value, slot.type}}});
  }
  return out;
}

namespace {

struct Candidate {
  std::string value;
  std::size_t triple;
};

std::vector<std::string> DistinctValues(const std::vector<Candidate>* evidence) {
  std::vector<std::string> out;
  if (evidence == nullptr) return out;
  for (const auto& c : *evidence) {
    if (std::find(out.begin(), out.end(), c.value) == out.end()) out.push_back(c.value);
  }
  return out;
}

template <class Map, class Key>
const std::vector<Candidate>* Lookup(const Map& map, const Key& key) {
  auto it = map.find(key);
  return it == map.end() ? nullptr : &it->second;
}

void MarkConsumed(const std::vector<Candidate>* evidence, const std::vector<std::string>& chosen,
                  std::vector<bool>& consumed) {
  if (evidence == nullptr) return;
  for (const auto& c : *evidence) {
    if (std::find(chosen.begin(), chosen.end(), c.value) != chosen.end()) {
      consumed[c.triple] = true;
    }
  }
}

}  // namespace

RecomposeResult Recompose(std::span<const Relation> triples, const SchemaSet& schema,
                          const RecomposeOptions& options) {
  using SubjectKey = std::tuple<std::string, std::string, std::string>;  // s, p, slot
  using PivotKey = std::pair<std::string, std::string>;                  // o_v1, slot
  std::map<SubjectKey, std::vector<Candidate>> by_subject;
  std::map<PivotKey, std::vector<Candidate>> by_pivot;
  std::vector<std::size_t> primaries;
  std::vector<bool> is_evidence(triples.size(), false);

  for (std::size_t i = 0; i < triples.size(); ++i) {
    const Relation& t = triples[i];
    if (t.object.size() != 1) {
      throw ArgumentError("recompose: triple '" + t.predicate + "' has " +
                          std::to_string(t.object.size()) + " object slots, expected 1");
    }
    const std::string& value = t.object.front().value;
    if (schema.Find(t.predicate) != nullptr) {
      primaries.push_back(i);
      continue;
    }
    const auto sep = t.predicate.find(kPredicateSeparator);
    if (sep != std::string::npos) {
      const std::string base = t.predicate.substr(0, sep);
      const std::string key = t.predicate.substr(sep + 1);
      const SchemaEntry* entry = schema.Find(base);
      if (entry == nullptr) {
        throw SchemaError("recompose: generated predicate '" + t.predicate +
                          "' has unknown base '" + base + "'");
      }
      if (!entry->IsMultiSlot() || entry->SlotType(key) == nullptr || key == kValueSlot) {
        throw SchemaError("recompose: '" + key + "' is not a secondary slot of '" + base + "'");
      }
      by_subject[{t.subject, base, key}].push_back({value, i});
      is_evidence[i] = true;
      continue;
    }
    if (schema.IsSecondarySlotKey(t.predicate)) {
      by_pivot[{t.subject, t.predicate}].push_back({value, i});
      is_evidence[i] = true;
      continue;
    }
    throw SchemaError("recompose: unknown predicate '" + t.predicate + "'");
  }

  RecomposeResult result;
  std::vector<bool> consumed(triples.size(), false);
  std::set<Relation> emitted;
  auto emit = [&](Relation r) {
    if (emitted.insert(r).second) result.relations.push_back(std::move(r));
  };

  for (std::size_t idx : primaries) {
    const Relation& t = triples[idx];
    const SchemaEntry& entry = *schema.Find(t.predicate);
    if (!entry.IsMultiSlot()) {
      emit(t);
      continue;
    }
    const ObjectSlot& head = t.object.front();
    Relation base{t.subject, t.subject_type, t.predicate,
                  {{std::string(kValueSlot), head.value,
                    head.type.empty() ? entry.slots.front().second : head.type}}};

    // Candidate values per secondary slot, in schema order.
    std::vector<std::pair<const std::pair<std::string, std::string>*, std::vector<std::string>>>
        choices;
    for (std::size_t s = 1; s < entry.slots.size(); ++s) {
      const auto& slot = entry.slots[s];
      const auto* subject_ev = Lookup(by_subject, SubjectKey{t.subject, t.predicate, slot.first});
      const auto* pivot_ev = Lookup(by_pivot, PivotKey{head.value, slot.first});
      std::vector<std::string> from_subject = DistinctValues(subject_ev);
      std::vector<std::string> from_pivot = DistinctValues(pivot_ev);
      std::vector<std::string> chosen;
      if (options.require_both_forms) {
        for (const auto& v : from_subject) {
          if (std::find(from_pivot.begin(), from_pivot.end(), v) != from_pivot.end()) {
            chosen.push_back(v);
          }
        }
      } else {
        chosen = from_subject.empty() ? from_pivot : from_subject;
      }
      MarkConsumed(subject_ev, chosen, consumed);
      MarkConsumed(pivot_ev, chosen, consumed);
      if (!chosen.empty()) choices.emplace_back(&slot, std::move(chosen));
    }

    // One relation per combination of candidate values.
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      Relation r = base;
      for (std::size_t c = 0; c < choices.size(); ++c) {
        r.object.push_back({choices[c].first->first, choices[c].second[pick[c]],
                            choices[c].first->second});
      }
      emit(std::move(r));
      std::size_t c = 0;
      while (c < choices.size() && ++pick[c] == choices[c].second.size()) pick[c++] = 0;
      if (c == choices.size()) break;
    }
  }

  for (std::size_t i = 0; i < triples.size(); ++i) {
    if (is_evidence[i] && !consumed[i]) result.dropped.push_back(triples[i]);
  }
  return result;
}

}  // namespace multiie
