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

#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "commands.h"
#include "multiie/error.h"
#include "multiie/schema.h"
#include "multiie/vote.h"

namespace multiie::cli {
namespace {

SchemaSet LoadSchema(const std::string& path) { return SchemaSet::FromJsonLines(ReadFile(path)); }

std::string Describe(const Relation& r) {
  std::string out = "(" + r.subject + ", " + r.predicate + ",";
  for (const auto& s : r.object) out += " " + s.key + "=" + s.value;
  return out + ")";
}

}  // namespace

void AddRelationCommands(CLI::App& app, Action& action) {
  struct Flags {
    std::string schema;
    std::string input = "-";
    std::string output = "-";
    bool strict = false;
    std::vector<std::string> files;
    std::size_t threshold = 0;
  };
  auto flags = std::make_shared<Flags>();

  auto* dis = app.add_subcommand("disintegrate",
                                 "Rewrite multi-slot relations into single-slot triples");
  dis->add_option("--schema", flags->schema, "Schema file (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  dis->add_option("-i,--input", flags->input, "Relation records, '-' for stdin");
  dis->add_option("-o,--output", flags->output, "Output records, '-' for stdout");
  dis->callback([&action, flags] {
    action = [flags] {
      const SchemaSet schema = LoadSchema(flags->schema);
      Input in(flags->input);
      Output out(flags->output);
      ForEachLine(in.stream(), [&](std::size_t, const std::string& line) {
        RelationSentence record = ParseRelationRecord(line);
        RelationSentence result{record.text, {}};
        for (const auto& r : record.relations) {
          for (auto& t : Disintegrate(r, schema)) result.relations.push_back(std::move(t));
        }
        out.Line(FormatRelationRecord(result));
      });
    };
  });

  auto* rec = app.add_subcommand("recompose",
                                 "Rebuild multi-slot relations from single-slot triples");
  rec->add_option("--schema", flags->schema, "Schema file (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  rec->add_option("-i,--input", flags->input, "Triple records, '-' for stdin");
  rec->add_option("-o,--output", flags->output, "Output records, '-' for stdout");
  rec->add_flag("--strict", flags->strict,
                "Attach a secondary slot only when both triple forms are present");
  rec->callback([&action, flags] {
    action = [flags] {
      const SchemaSet schema = LoadSchema(flags->schema);
      Input in(flags->input);
      Output out(flags->output);
      ForEachLine(in.stream(), [&](std::size_t line_no, const std::string& line) {
        RelationSentence record = ParseRelationRecord(line);
        RecomposeResult result =
            Recompose(record.relations, schema, RecomposeOptions{flags->strict});
        for (const auto& d : result.dropped) {
          std::cerr << "recompose: line " << line_no << ": dropped unclaimed triple "
                    << Describe(d) << '\n';
        }
        out.Line(FormatRelationRecord({record.text, std::move(result.relations)}));
      });
    };
  });

  auto* vote = app.add_subcommand("vote", "Merge prediction files by voting");
  vote->add_option("files", flags->files, "Prediction files (JSON lines), one per model")
      ->required()
      ->check(CLI::ExistingFile);
  vote->add_option("--threshold", flags->threshold,
                   "Minimum number of files that must contain a record (default: majority)");
  vote->add_option("-o,--output", flags->output, "Merged records, '-' for stdout");
  vote->callback([&action, flags] {
    action = [flags] {
      std::vector<PredictionSet> sets;
      std::vector<std::string> order;
      std::set<std::string> seen;
      for (const auto& path : flags->files) {
        PredictionSet set{path, {}};
        Input in(path);
        ForEachLine(in.stream(), [&](std::size_t, const std::string& line) {
          for (auto& item : ExplodeRecord(line)) {
            if (seen.insert(item).second) order.push_back(item);
            set.items.insert(std::move(item));
          }
        });
        sets.push_back(std::move(set));
      }
      const std::size_t threshold =
          flags->threshold > 0 ? flags->threshold : MajorityThreshold(sets.size());
      const std::vector<std::string> kept = Vote(sets, threshold);
      const std::set<std::string> passing(kept.begin(), kept.end());
      std::vector<std::string> ordered;
      for (const auto& item : order) {
        if (passing.count(item)) ordered.push_back(item);
      }
      Output out(flags->output);
      for (const auto& line : RegroupRecords(ordered)) out.Line(line);
    };
  });
}

}  // namespace multiie::cli
