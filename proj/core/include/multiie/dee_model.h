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

#ifndef MULTIIE_DEE_MODEL_H_
#define MULTIIE_DEE_MODEL_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "multiie/config.h"
#include "multiie/doc_window.h"
#include "multiie/encoder.h"
#include "multiie/labels.h"
#include "multiie/match_loss.h"
#include "multiie/metrics.h"
#include "multiie/params.h"
#include "multiie/see_model.h"
#include "multiie/set_decoder.h"
#include "multiie/text.h"

namespace multiie {

// Argument occurrence in document code points [begin, end). `type` indexes
// the argument label space (event type joined with role).
struct CharSpan {
  std::size_t type = 0;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const CharSpan&) const = default;
  auto operator<=>(const CharSpan&) const = default;
};

struct DeeDocument {
  std::string id;
  std::string text;
  std::vector<std::vector<CharSpan>> events;
};

struct DeeCorpus {
  LabelSpace event_types;
  LabelSpace argument_types;
  std::vector<DeeDocument> documents;
};

// A window of one document with the gold events visible inside it.
struct DeeWindow {
  std::string doc_id;
  Segment segment;
  std::vector<Token> tokens;  // offsets local to the segment
  std::vector<std::vector<TypedSpan>> events;
};

// Splits each document into windows. An argument belongs to a window when it
// lies fully inside it; an event belongs when at least one argument does.
// Throws DataError for a document (or window) with more than `max_events`
// gold events.
std::vector<DeeWindow> MakeWindows(const DeeDocument& doc, std::size_t window, std::size_t stride,
                                   std::size_t max_events);

// Gold slices padded with empty ("null event") slices up to `slots`.
LabelTensor GoldLabels(std::span<const std::vector<TypedSpan>> events, std::size_t slots,
                       std::size_t tokens, std::size_t types);

struct DeeParams {
  ToyEncoder encoder;
  QueryBank queries;
  DecoderStack decoder;
  PointerParams pointer;

  static DeeParams Random(std::size_t vocab_size, std::size_t argument_types,
                          const TrainConfig& config, Rng& rng);

  template <class F>
  void ForEachTensor(F&& f) {
    ForEachNested("encoder", encoder, f);
    ForEachNested("queries", queries, f);
    ForEachNested("decoder", decoder, f);
    ForEachNested("pointer", pointer, f);
  }
  template <class F>
  void ForEachTensor(F&& f) const {
    ForEachNested("encoder", encoder, f);
    ForEachNested("queries", queries, f);
    ForEachNested("decoder", decoder, f);
    ForEachNested("pointer", pointer, f);
  }
};

// Set-decoder loss at embedding sequence x: decode, score every slot, then
// the bipartite matching loss against `gold`. When `grads` is non-null,
// parameter gradients (except the embedding table) are accumulated and dL/dx
// is written to `dx`.
double DeeLoss(const DeeParams& params, const LabelTensor& gold, const Matrix& x,
               const MatchOptions& options, DeeParams* grads = nullptr, Matrix* dx = nullptr);

// Per-slot decoded spans.
std::vector<std::vector<TypedSpan>> PredictDeeSlots(const DeeParams& params, const Matrix& x,
                                                    double threshold);

struct DeeModel {
  Vocabulary vocab;
  LabelSpace event_types;
  LabelSpace argument_types;
  TrainConfig config;
  DeeParams params;
};

struct DeeTrainResult {
  DeeModel model;
  std::vector<EpochStats> history;
};

// Each slot yields one event per event type among its spans. Events are
// collected over all windows and exact duplicates removed.
EventDocument PredictDee(const DeeModel& model, const std::string& id, const std::string& text);

// Gold events of a document in evaluation form.
std::vector<Event> GoldEvents(const DeeDocument& doc, const LabelSpace& argument_types);

ScoreReport EvaluateDee(const DeeModel& model, const DeeCorpus& corpus);

// Per epoch: shuffle all windows, then one FGM step per window. Throws
// ArgumentError on an empty corpus and DataError as MakeWindows does.
DeeTrainResult TrainDee(const DeeCorpus& corpus, const TrainConfig& config,
                        const EpochCallback& on_epoch = {});

}  // namespace multiie

#endif  // MULTIIE_DEE_MODEL_H_
