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

#ifndef MULTIIE_CONFIG_H_
#define MULTIIE_CONFIG_H_

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>

#include "multiie/doc_window.h"
#include "multiie/optimizer.h"
#include "multiie/set_decoder.h"

namespace multiie {

struct TrainConfig {
  OptimizerKind optimizer = OptimizerKind::kSgd;
  double learning_rate = 1.0;
  double weight_decay = 0.0;
  double clip_norm = 0.0;
  std::size_t epochs = 200;
  double fgm_epsilon = 0.5;
  double synonym_prob = 0.0;
  double delete_prob = 0.0;
  double argument_weight = 1.0;
  // Zero disables the trigger pathway (fusion and trigger loss).
  double trigger_weight = 0.5;
  std::uint64_t seed = 1;

  std::size_t dim = 32;
  bool projection = true;
  double pointer_bias = -2.0;
  double threshold = 0.5;

  std::size_t event_slots = kDefaultEventSlots;
  std::size_t decoder_layers = kDefaultDecoderLayers;
  std::size_t decoder_heads = kDefaultDecoderHeads;
  bool use_matching = true;
  std::size_t window = kDefaultWindow;
  std::size_t stride = kDefaultWindow / 2;

  // Defaults tuned for the toy sentence-level model (plain SGD).
  static TrainConfig SeeDefaults() { return {}; }
  // The set decoder trains with Adam: under the slot-averaged loss, plain SGD
  // leaves the sparse positive entries with vanishing updates.
  static TrainConfig DeeDefaults() {
    TrainConfig c;
    c.optimizer = OptimizerKind::kAdam;
    c.learning_rate = 1e-3;
    c.epochs = 300;
    return c;
  }

  // Throws ConfigError when a value is out of range.
  void Validate() const;

  // Sets one field from its textual value. Throws ConfigError for an
  // unknown key or an unparsable value.
  void Set(std::string_view key, std::string_view value);

  // key -> textual value, for every field.
  std::map<std::string, std::string> ToMap() const;

  OptimizerOptions OptimizerSettings() const;
};

// Config file grammar, one entry per line:
//
//   line    := blank | comment | entry
//   comment := '#' anything
//   entry   := key '=' value [comment]
//   key     := [a-z_]+
//   value   := number | "true" | "false" | '"' chars '"'
//
// Whitespace around keys and values is ignored. Later entries override
// earlier ones. Errors are ConfigError naming the line.
void ApplyConfigStream(std::istream& in, TrainConfig& config);

}  // namespace multiie

#endif  // MULTIIE_CONFIG_H_
