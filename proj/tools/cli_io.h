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

#ifndef MULTIIE_TOOLS_CLI_IO_H_
#define MULTIIE_TOOLS_CLI_IO_H_

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "multiie/config.h"
#include "multiie/records.h"

namespace multiie::cli {

// "-" selects stdin / stdout.
class Input {
 public:
  explicit Input(const std::string& path);
  std::istream& stream() { return file_ ? *file_ : std::cin; }

 private:
  std::unique_ptr<std::ifstream> file_;
};

class Output {
 public:
  explicit Output(const std::string& path);
  ~Output();
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void Line(const std::string& text) { stream() << text << '\n'; }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
};

std::string ReadFile(const std::string& path);

std::vector<RelationSentence> ReadRelationRecords(const std::string& path);
std::vector<EventRecord> ReadEventRecords(const std::string& path);

// Training settings shared by train-see and train-dee: the config file is
// applied first, then `--set key=value` overrides, then the dedicated flags.
struct TrainFlags {
  std::string config_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = 1;
  bool seed_given = false;
  int epochs = -1;
};

TrainConfig ResolveConfig(TrainConfig base, const TrainFlags& flags);

}  // namespace multiie::cli

#endif  // MULTIIE_TOOLS_CLI_IO_H_
