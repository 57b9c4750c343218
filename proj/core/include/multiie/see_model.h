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

#ifndef MULTIIE_SEE_MODEL_H_
#define MULTIIE_SEE_MODEL_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "multiie/augment.h"
#include "multiie/config.h"
#include "multiie/encoder.h"
#include "multiie/labels.h"
#include "multiie/metrics.h"
#include "multiie/params.h"
#include "multiie/pointer.h"
#include "multiie/text.h"
#include "multiie/trigger_fusion.h"

namespace multiie {

// One sentence with token-level gold spans. Argument span types index the
// argument label space (event type joined with role); trigger span types
// index the event type space.
struct SeeExample {
  std::string id;
  std::string text;
  std::vector<Token> tokens;
  std::vector<TypedSpan> arguments;
  std::vector<TypedSpan> triggers;
};

struct SeeCorpus {
  LabelSpace event_types;
  LabelSpace argument_types;
  std::vector<SeeExample> examples;
};

struct SeeParams {
  ToyEncoder encoder;
  FusionParams fusion;
  PointerParams arguments;
  PointerParams triggers;

  static SeeParams Random(std::size_t vocab_size, std::size_t event_types,
                          std::size_t argument_types, const TrainConfig& config, Rng& rng);

  template <class F>
  void ForEachTensor(F&& f) {
    ForEachNested("encoder", encoder, f);
    ForEachNested("fusion", fusion, f);
    ForEachNested("arguments", arguments, f);
    ForEachNested("triggers", triggers, f);
  }
  template <class F>
  void ForEachTensor(F&& f) const {
    ForEachNested("encoder", encoder, f);
    ForEachNested("fusion", fusion, f);
    ForEachNested("arguments", arguments, f);
    ForEachNested("triggers", triggers, f);
  }
};

struct SeeLossWeights {
  double argument = 1.0;
  // Zero disables the trigger pathway entirely.
  double trigger = 0.5;
};

// Multi-task loss at embedding sequence x:
//   argument * BCE(argument pointer on H + Fuse(H, t)) + trigger * BCE(trigger pointer on H)
// where t pools the gold trigger spans; with no gold trigger the argument
// pointer sees H alone. When `grads` is non-null, parameter gradients (except the
// embedding table) are accumulated there and dL/dx is written to `dx`.
double SeeLoss(const SeeParams& params, std::span<const TypedSpan> arguments,
               std::span<const TypedSpan> triggers, const Matrix& x, const SeeLossWeights& weights,
               SeeParams* grads = nullptr, Matrix* dx = nullptr);

struct SeeSpans {
  std::vector<TypedSpan> arguments;
  std::vector<TypedSpan> triggers;
};

// Inference: predicted triggers (when enabled) drive the fusion.
SeeSpans PredictSeeSpans(const SeeParams& params, const Matrix& x, bool use_triggers,
                         double threshold);

// Groups argument spans into one event per event type; the first trigger
// span of that type, if any, becomes its trigger.
std::vector<Event> SpansToEvents(const std::string& text, std::span<const Token> tokens,
                                 std::span<const TypedSpan> arguments,
                                 std::span<const TypedSpan> triggers,
                                 const LabelSpace& event_types, const LabelSpace& argument_types);

struct SeeModel {
  Vocabulary vocab;
  LabelSpace event_types;
  LabelSpace argument_types;
  TrainConfig config;
  SeeParams params;

  bool use_triggers() const { return config.trigger_weight > 0.0; }
};

struct EpochStats {
  std::size_t epoch = 0;
  double loss = 0.0;  // mean clean loss over the epoch
  double f1 = 0.0;    // on the un-augmented training data
};

// Called after every epoch; returning false stops training early.
using EpochCallback = std::function<bool(const EpochStats&)>;

struct SeeTrainResult {
  SeeModel model;
  std::vector<EpochStats> history;
};

EventDocument PredictSee(const SeeModel& model, const std::string& id, const std::string& text);
ScoreReport EvaluateSee(const SeeModel& model, const SeeCorpus& corpus);

// Per epoch: shuffle, augment, then one FGM step per sentence. Throws
// ArgumentError on an empty corpus.
SeeTrainResult TrainSee(const SeeCorpus& corpus, const TrainConfig& config,
                        const SynonymDictionary* synonyms = nullptr,
                        const EpochCallback& on_epoch = {});

}  // namespace multiie

#endif  // MULTIIE_SEE_MODEL_H_
