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

#include "multiie/config.h"

#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

#include "multiie/error.h"

namespace multiie {
namespace {

std::string_view Strip(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ParseDouble(std::string_view key, std::string_view value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out)) {
    throw ConfigError("config key '" + std::string(key) + "': expected a number, got '" +
                      std::string(value) + "'");
  }
  return out;
}

std::uint64_t ParseUnsigned(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + std::string(key) + "': expected a non-negative integer, got '" +
                      std::string(value) + "'");
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("config key '" + std::string(key) + "': expected true or false, got '" +
                    std::string(value) + "'");
}

std::string Format(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

void CheckProbability(const char* key, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError(std::string(key) + " = " + Format(p) + " outside [0, 1]");
  }
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (weight_decay < 0.0) throw ConfigError("weight_decay must be >= 0");
  if (clip_norm < 0.0) throw ConfigError("clip_norm must be >= 0");
  if (fgm_epsilon < 0.0) throw ConfigError("fgm_epsilon must be >= 0");
  CheckProbability("synonym_prob", synonym_prob);
  CheckProbability("delete_prob", delete_prob);
  CheckProbability("threshold", threshold);
  if (argument_weight < 0.0 || trigger_weight < 0.0) {
    throw ConfigError("loss weights must be >= 0");
  }
  if (dim == 0) throw ConfigError("dim must be > 0");
  if (event_slots == 0) throw ConfigError("event_slots must be > 0");
  if (decoder_layers == 0) throw ConfigError("decoder_layers must be > 0");
  if (decoder_heads == 0 || dim % decoder_heads != 0) {
    throw ConfigError("dim (" + std::to_string(dim) + ") must be divisible by decoder_heads (" +
                      std::to_string(decoder_heads) + ")");
  }
  if (window == 0 || stride == 0 || stride > window) {
    throw ConfigError("need 1 <= stride <= window");
  }
}

void TrainConfig::Set(std::string_view key, std::string_view value) {
  using Setter = std::function<void(TrainConfig&, std::string_view)>;
  auto real = [](double TrainConfig::*field) -> Setter {
    return [field](TrainConfig& c, std::string_view v) { c.*field = ParseDouble("", v); };
  };
  auto size = [](std::size_t TrainConfig::*field) -> Setter {
    return [field](TrainConfig& c, std::string_view v) { c.*field = ParseUnsigned("", v); };
  };
  auto flag = [](bool TrainConfig::*field) -> Setter {
    return [field](TrainConfig& c, std::string_view v) { c.*field = ParseBool("", v); };
  };
  static const std::map<std::string, Setter, std::less<>> kSetters = {
      {"optimizer", [](TrainConfig& c, std::string_view v) { c.optimizer = ParseOptimizerKind(v); }},
      {"learning_rate", real(&TrainConfig::learning_rate)},
      {"weight_decay", real(&TrainConfig::weight_decay)},
      {"clip_norm", real(&TrainConfig::clip_norm)},
      {"epochs", size(&TrainConfig::epochs)},
      {"fgm_epsilon", real(&TrainConfig::fgm_epsilon)},
      {"synonym_prob", real(&TrainConfig::synonym_prob)},
      {"delete_prob", real(&TrainConfig::delete_prob)},
      {"argument_weight", real(&TrainConfig::argument_weight)},
      {"trigger_weight", real(&TrainConfig::trigger_weight)},
      {"seed", [](TrainConfig& c, std::string_view v) { c.seed = ParseUnsigned("", v); }},
      {"dim", size(&TrainConfig::dim)},
      {"projection", flag(&TrainConfig::projection)},
      {"pointer_bias", real(&TrainConfig::pointer_bias)},
      {"threshold", real(&TrainConfig::threshold)},
      {"event_slots", size(&TrainConfig::event_slots)},
      {"decoder_layers", size(&TrainConfig::decoder_layers)},
      {"decoder_heads", size(&TrainConfig::decoder_heads)},
      {"use_matching", flag(&TrainConfig::use_matching)},
      {"window", size(&TrainConfig::window)},
      {"stride", size(&TrainConfig::stride)},
  };
  auto it = kSetters.find(key);
  if (it == kSetters.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  try {
    it->second(*this, value);
  } catch (const ConfigError&) {
    throw ConfigError("config key '" + std::string(key) + "': bad value '" + std::string(value) +
                      "'");
  }
}

std::map<std::string, std::string> TrainConfig::ToMap() const {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {
      {"optimizer", std::string(OptimizerName(optimizer))},
      {"learning_rate", Format(learning_rate)},
      {"weight_decay", Format(weight_decay)},
      {"clip_norm", Format(clip_norm)},
      {"epochs", std::to_string(epochs)},
      {"fgm_epsilon", Format(fgm_epsilon)},
      {"synonym_prob", Format(synonym_prob)},
      {"delete_prob", Format(delete_prob)},
      {"argument_weight", Format(argument_weight)},
      {"trigger_weight", Format(trigger_weight)},
      {"seed", std::to_string(seed)},
      {"dim", std::to_string(dim)},
      {"projection", b(projection)},
      {"pointer_bias", Format(pointer_bias)},
      {"threshold", Format(threshold)},
      {"event_slots", std::to_string(event_slots)},
      {"decoder_layers", std::to_string(decoder_layers)},
      {"decoder_heads", std::to_string(decoder_heads)},
      {"use_matching", b(use_matching)},
      {"window", std::to_string(window)},
      {"stride", std::to_string(stride)},
  };
}

OptimizerOptions TrainConfig::OptimizerSettings() const {
  OptimizerOptions o;
  o.kind = optimizer;
  o.learning_rate = learning_rate;
  o.weight_decay = weight_decay;
  o.clip_norm = clip_norm;
  return o;
}

void ApplyConfigStream(std::istream& in, TrainConfig& config) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = Strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string_view key = Strip(line.substr(0, eq));
    std::string_view value = Strip(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    try {
      config.Set(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace multiie
