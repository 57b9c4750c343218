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

#ifndef MULTIIE_TOOLS_COMMANDS_H_
#define MULTIIE_TOOLS_COMMANDS_H_

#include <functional>

#include <CLI11.hpp>

#include "cli_io.h"

namespace multiie::cli {

// Options visible to every subcommand.
struct GlobalFlags {
  std::uint64_t seed = 1;
  bool seed_given = false;
};

using Action = std::function<void()>;

// Each registrar adds its subcommands to `app` and stores the action to run
// into `action` when that subcommand is selected.
void AddRelationCommands(CLI::App& app, Action& action);
void AddDocumentCommands(CLI::App& app, const GlobalFlags& global, Action& action);
void AddTrainingCommands(CLI::App& app, const GlobalFlags& global, Action& action);
void AddEvaluationCommands(CLI::App& app, Action& action);

}  // namespace multiie::cli

#endif  // MULTIIE_TOOLS_COMMANDS_H_
