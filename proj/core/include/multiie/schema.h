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

#ifndef MULTIIE_SCHEMA_H_
#define MULTIIE_SCHEMA_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace multiie {

inline constexpr std::string_view kValueSlot = "@value";
inline constexpr char kPredicateSeparator = '-';

struct ObjectSlot {
  std::string key;
  std::string value;
  std::string type;

  bool operator==(const ObjectSlot&) const = default;
  auto operator<=>(const ObjectSlot&) const = default;
};

// An SPO record whose object is an ordered slot map. A single-O-value triple
// is the one-slot case.
struct Relation {
  std::string subject;
  std::string subject_type;
  std::string predicate;
  std::vector<ObjectSlot> object;

  bool IsSingleSlot() const { return object.size() == 1; }
  const ObjectSlot* FindSlot(std::string_view key) const;

  bool operator==(const Relation&) const = default;
  auto operator<=>(const Relation&) const = default;
};

struct SchemaEntry {
  std::string predicate;
  std::string subject_type;
  // (slot key, slot type); "@value" first for multi-slot entries.
  std::vector<std::pair<std::string, std::string>> slots;

  bool IsMultiSlot() const { return slots.size() > 1; }
  const std::string* SlotType(std::string_view key) const;
};

class SchemaSet {
 public:
  SchemaSet() = default;

  // Throws SchemaError on duplicate predicates, a predicate containing the
  // generated-predicate separator, a multi-slot entry without "@value", or a
  // slot key that collides with a predicate name.
  void Add(SchemaEntry entry);

  // One JSON object per line: {"predicate", "subject_type", "object_type": {slot: type}}.
  static SchemaSet FromJsonLines(std::string_view content);

  const SchemaEntry* Find(std::string_view predicate) const;
  // True when `key` is a secondary slot of some multi-slot entry.
  bool IsSecondarySlotKey(std::string_view key) const;
  const std::vector<SchemaEntry>& entries() const { return entries_; }

 private:
  std::vector<SchemaEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Throws ArgumentError for empty/duplicate slots and SchemaError when the
// relation does not fit its schema entry.
void ValidateRelation(const Relation& relation, const SchemaSet& schema);

// Reorders object slots into schema order ("@value" first). Slots unknown to
// the schema raise SchemaError.
Relation CanonicalSlotOrder(const Relation& relation, const SchemaSet& schema);

// m slots -> 2m-1 single-slot triples:
//   {s, p, o_v1}, then for each i >= 2: {s, p-o_ki, o_vi}, {o_v1, o_ki, o_vi}.
std::vector<Relation> Disintegrate(const Relation& relation, const SchemaSet& schema);

struct RecomposeOptions {
  // Attach a secondary slot only when both disintegrated forms are present.
  bool require_both_forms = false;
};

struct RecomposeResult {
  std::vector<Relation> relations;
  // Secondary-slot triples that no primary triple claimed.
  std::vector<Relation> dropped;
};

RecomposeResult Recompose(std::span<const Relation> triples, const SchemaSet& schema,
                          const RecomposeOptions& options = {});

}  // namespace multiie

#endif  // MULTIIE_SCHEMA_H_
