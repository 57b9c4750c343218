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

// multiie: command-line front end for the extraction toolkit.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data or schema
// error, 3 internal error.

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.h"
#include "multiie/error.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace multiie;
  CLI::App app{"Schema-aware relation and event extraction toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::GlobalFlags global;
  app.add_option_function<std::uint64_t>(
         "--seed",
         [&](std::uint64_t seed) {
           global.seed = seed;
           global.seed_given = true;
         },
         "Seed for every randomized step")
      ->type_name("UINT");

  cli::Action action;
  cli::AddRelationCommands(app, action);
  cli::AddDocumentCommands(app, global, action);
  cli::AddTrainingCommands(app, global, action);
  cli::AddEvaluationCommands(app, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    action();
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
