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

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.h"
#include "multiie/error.h"
#include "multiie/metrics.h"

namespace multiie::cli {
namespace {

std::vector<EventDocument> ReadEventDocuments(const std::string& path) {
  std::vector<EventDocument> out;
  for (const auto& r : ReadEventRecords(path)) out.push_back(ToEventDocument(r));
  return out;
}

ScoreReport ScoreRe(const std::string& pred, const std::string& gold) {
  return ReF1(ReadRelationRecords(pred), ReadRelationRecords(gold));
}

ScoreReport ScoreSee(const std::string& pred, const std::string& gold) {
  return SeeF1(ReadEventDocuments(pred), ReadEventDocuments(gold));
}

ScoreReport ScoreDee(const std::string& pred, const std::string& gold, MatchStrategy strategy) {
  return DeeF1(ReadEventDocuments(pred), ReadEventDocuments(gold), strategy);
}

}  // namespace

void AddEvaluationCommands(CLI::App& app, Action& action) {
  struct Flags {
    std::string pred;
    std::string gold;
    std::string output = "-";
    bool greedy = false;
    std::string paths[6];
  };
  auto flags = std::make_shared<Flags>();

  auto add_pair = [&](CLI::App* cmd) {
    cmd->add_option("--pred", flags->pred, "Predicted records, '-' for stdin")
        ->required()
        ->check(CLI::ExistingFile | CLI::IsMember({"-"}));
    cmd->add_option("--gold", flags->gold, "Gold records")->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--output", flags->output, "Score report, '-' for stdout");
  };

  auto* re = app.add_subcommand("eval-re", "Relation F1 (all slots must match)");
  add_pair(re);
  re->callback([&action, flags] {
    action = [flags] {
      Output(flags->output).Line(FormatScoreReport(ScoreRe(flags->pred, flags->gold)));
    };
  });

  auto* see = app.add_subcommand("eval-see", "Character-level argument F1 for sentence events");
  add_pair(see);
  see->callback([&action, flags] {
    action = [flags] {
      Output(flags->output).Line(FormatScoreReport(ScoreSee(flags->pred, flags->gold)));
    };
  });

  auto* dee = app.add_subcommand("eval-dee", "Event-level matching F1 for document events");
  add_pair(dee);
  dee->add_flag("--greedy", flags->greedy, "Greedy matching instead of the optimal assignment");
  dee->callback([&action, flags] {
    action = [flags] {
      const auto strategy = flags->greedy ? MatchStrategy::kGreedy : MatchStrategy::kOptimal;
      Output(flags->output).Line(FormatScoreReport(ScoreDee(flags->pred, flags->gold, strategy)));
    };
  });

  static const char* const kNames[6] = {"re-pred",  "re-gold",  "see-pred",
                                        "see-gold", "dee-pred", "dee-gold"};
  static const char* const kHelp[6] = {
      "Predicted relation records", "Gold relation records",
      "Predicted sentence event records", "Gold sentence event records",
      "Predicted document event records", "Gold document event records"};
  auto* all = app.add_subcommand("score-all", "All three subtask reports and their macro F1");
  for (int i = 0; i < 6; ++i) {
    all->add_option(std::string("--") + kNames[i], flags->paths[i], kHelp[i])
        ->check(CLI::ExistingFile);
  }
  all->add_option("-o,--output", flags->output, "Combined report, '-' for stdout");
  all->callback([&action, flags] {
    action = [flags] {
      for (int i = 0; i < 6; ++i) {
        if (flags->paths[i].empty()) {
          throw ArgumentError(std::string("score-all: --") + kNames[i] + " is required");
        }
      }
      const auto& p = flags->paths;
      const ScoreReport r = ScoreRe(p[0], p[1]);
      const ScoreReport s = ScoreSee(p[2], p[3]);
      const ScoreReport d = ScoreDee(p[4], p[5], MatchStrategy::kOptimal);
      nlohmann::json out{{"re", nlohmann::json::parse(FormatScoreReport(r))},
                         {"see", nlohmann::json::parse(FormatScoreReport(s))},
                         {"dee", nlohmann::json::parse(FormatScoreReport(d))},
                         {"macro_f1", MacroAverage(r.overall.f1, s.overall.f1, d.overall.f1)}};
      Output(flags->output).Line(out.dump());
    };
  });
}

}  // namespace multiie::cli
