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

#include "cli_io.h"

#include <sstream>

#include "multiie/error.h"

namespace multiie::cli {

Input::Input(const std::string& path) {
  if (path == "-") return;
  file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file_) throw ArgumentError("cannot open '" + path + "' for reading");
}

Output::Output(const std::string& path) : path_(path) {
  if (path == "-") return;
  file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*file_) throw ArgumentError("cannot open '" + path + "' for writing");
}

Output::~Output() { stream().flush(); }

std::string ReadFile(const std::string& path) {
  Input in(path);
  std::ostringstream buffer;
  buffer << in.stream().rdbuf();
  return buffer.str();
}

std::vector<RelationSentence> ReadRelationRecords(const std::string& path) {
  Input in(path);
  std::vector<RelationSentence> out;
  ForEachLine(in.stream(), [&](std::size_t, const std::string& line) {
    out.push_back(ParseRelationRecord(line));
  });
  return out;
}

std::vector<EventRecord> ReadEventRecords(const std::string& path) {
  Input in(path);
  std::vector<EventRecord> out;
  ForEachLine(in.stream(),
              [&](std::size_t, const std::string& line) { out.push_back(ParseEventRecord(line)); });
  return out;
}

TrainConfig ResolveConfig(TrainConfig base, const TrainFlags& flags) {
  if (!flags.config_path.empty()) {
    Input in(flags.config_path);
    ApplyConfigStream(in.stream(), base);
  }
  for (const auto& kv : flags.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    base.Set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (flags.seed_given) base.seed = flags.seed;
  if (flags.epochs >= 0) base.epochs = static_cast<std::size_t>(flags.epochs);
  base.Validate();
  return base;
}

}  // namespace multiie::cli
