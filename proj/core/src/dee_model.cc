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

#include "multiie/dee_model.h"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>

#include "multiie/error.h"
#include "multiie/fgm.h"

namespace multiie {
namespace {

// Index of the token containing local code point `pos`.
std::optional<std::size_t> TokenAt(std::span<const Token> tokens, std::size_t pos) {
  auto it = std::upper_bound(tokens.begin(), tokens.end(), pos,
                             [](std::size_t p, const Token& t) { return p < t.begin; });
  if (it == tokens.begin()) return std::nullopt;
  --it;
  if (pos >= it->end) return std::nullopt;
  return static_cast<std::size_t>(it - tokens.begin());
}

std::vector<std::string> Words(std::span<const Token> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

std::string TooManyEvents(const std::string& doc_id, std::size_t count, std::size_t slots,
                          const char* where) {
  return "document '" + doc_id + "' has " + std::to_string(count) + " gold events" + where +
         ", more than the " + std::to_string(slots) + " event slots";
}

}  // namespace

std::vector<DeeWindow> MakeWindows(const DeeDocument& doc, std::size_t window, std::size_t stride,
                                   std::size_t max_events) {
  std::set<std::vector<CharSpan>> distinct;
  for (const auto& e : doc.events) {
    std::vector<CharSpan> sorted = e;
    std::sort(sorted.begin(), sorted.end());
    distinct.insert(sorted);
  }
  if (distinct.size() > max_events) {
    throw DataError(TooManyEvents(doc.id, distinct.size(), max_events, ""));
  }
  std::vector<DeeWindow> out;
  for (Segment& seg : Split(doc.id, doc.text, window, stride)) {
    DeeWindow w;
    w.doc_id = doc.id;
    w.tokens = Tokenize(seg.text);
    for (const auto& e : doc.events) {
      std::vector<TypedSpan> spans;
      for (const auto& a : e) {
        if (a.begin < seg.start_offset || a.end > seg.end_offset() || a.begin >= a.end) continue;
        auto first = TokenAt(w.tokens, a.begin - seg.start_offset);
        auto last = TokenAt(w.tokens, a.end - 1 - seg.start_offset);
        if (!first || !last) continue;
        spans.push_back({a.type, *first, *last, 1.0});
      }
      if (spans.empty()) continue;
      std::sort(spans.begin(), spans.end(), [](const TypedSpan& a, const TypedSpan& b) {
        return std::tie(a.type, a.start, a.end) < std::tie(b.type, b.start, b.end);
      });
      spans.erase(std::unique(spans.begin(), spans.end(),
                              [](const TypedSpan& a, const TypedSpan& b) { return a.SameExtent(b); }),
                  spans.end());
      bool duplicate = false;
      for (const auto& prev : w.events) {
        duplicate = duplicate || (prev.size() == spans.size() &&
                                  std::equal(prev.begin(), prev.end(), spans.begin(),
                                             [](const TypedSpan& a, const TypedSpan& b) {
                                               return a.SameExtent(b);
                                             }));
      }
      if (!duplicate) w.events.push_back(std::move(spans));
    }
    if (w.events.size() > max_events) {
      throw DataError(TooManyEvents(doc.id, w.events.size(), max_events, " in one window"));
    }
    w.segment = std::move(seg);
    out.push_back(std::move(w));
  }
  return out;
}

LabelTensor GoldLabels(std::span<const std::vector<TypedSpan>> events, std::size_t slots,
                       std::size_t tokens, std::size_t types) {
  if (events.size() > slots) {
    throw DataError(std::to_string(events.size()) + " gold events exceed " +
                    std::to_string(slots) + " slots");
  }
  std::vector<PointerGrid> slices;
  slices.reserve(slots);
  for (const auto& e : events) slices.push_back(GoldGrid(tokens, types, e));
  while (slices.size() < slots) slices.push_back(GoldGrid(tokens, types, {}));
  return LabelTensor(std::move(slices));
}

DeeParams DeeParams::Random(std::size_t vocab_size, std::size_t argument_types,
                            const TrainConfig& config, Rng& rng) {
  DeeParams p;
  p.encoder = ToyEncoder::Random(vocab_size, config.dim, config.projection, rng);
  p.queries = QueryBank::Random(config.event_slots, config.dim, rng);
  p.decoder = DecoderStack::Random(config.dim, config.decoder_layers, config.decoder_heads, rng);
  p.pointer = PointerParams::Random(config.dim, argument_types, config.pointer_bias, rng);
  return p;
}

double DeeLoss(const DeeParams& params, const LabelTensor& gold, const Matrix& x,
               const MatchOptions& options, DeeParams* grads, Matrix* dx) {
  const Matrix h = EncodeEmbeddings(params.encoder, x);
  DecoderCache cache;
  const Matrix refined = RefineQueries(h, params.queries, params.decoder, &cache);
  const Tensor3 expanded = ExpandQueries(refined, h);
  LabelTensor pred(PointerOutputs(expanded, params.pointer));
  for (std::size_t k = 0; k < pred.events(); ++k) {
    if (!pred.slice(k).starts.AllFinite() || !pred.slice(k).ends.AllFinite()) {
      throw TrainingError("non-finite slot probabilities in slot " + std::to_string(k) +
                          " (parameters diverged)");
    }
  }
  MatchLossResult match = MatchingLoss(pred, gold, options);
  if (grads == nullptr) return match.loss;

  Tensor3 dexpanded = PointerOutputsBackward(expanded, params.pointer, match.grad, grads->pointer);
  DecoderInputGrads from_expand = ExpandQueriesBackward(dexpanded);
  DecoderInputGrads from_refine =
      RefineQueriesBackward(cache, params.decoder, from_expand.queries, grads->decoder);
  grads->queries.queries += from_refine.queries;
  Matrix dh = from_expand.tokens;
  dh += from_refine.tokens;
  Matrix dembed = EncodeEmbeddingsBackward(params.encoder, x, h, dh, grads->encoder);
  if (dx != nullptr) *dx = std::move(dembed);
  return match.loss;
}

std::vector<std::vector<TypedSpan>> PredictDeeSlots(const DeeParams& params, const Matrix& x,
                                                    double threshold) {
  const Matrix h = EncodeEmbeddings(params.encoder, x);
  const Tensor3 expanded = ExpandQueries(RefineQueries(h, params.queries, params.decoder), h);
  std::vector<std::vector<TypedSpan>> out;
  for (const PointerGrid& slot : PointerOutputs(expanded, params.pointer)) {
    out.push_back(DecodeSpans(slot, threshold));
  }
  return out;
}

namespace {

// Order-insensitive identity of an event, ignoring the trigger.
Event EventKey(const Event& e) {
  Event key = e;
  key.trigger.reset();
  std::sort(key.arguments.begin(), key.arguments.end());
  return key;
}

}  // namespace

EventDocument PredictDee(const DeeModel& model, const std::string& id, const std::string& text) {
  EventDocument doc{id, {}};
  std::set<Event> seen;
  for (const Segment& seg : Split(id, text, model.config.window, model.config.stride)) {
    std::vector<Token> tokens = Tokenize(seg.text);
    if (tokens.empty()) continue;
    const Matrix x = Embed(model.params.encoder, model.vocab.Encode(Words(tokens)));
    for (const auto& slot : PredictDeeSlots(model.params, x, model.config.threshold)) {
      for (Event& e :
           SpansToEvents(seg.text, tokens, slot, {}, model.event_types, model.argument_types)) {
        if (seen.insert(EventKey(e)).second) doc.events.push_back(std::move(e));
      }
    }
  }
  return doc;
}

std::vector<Event> GoldEvents(const DeeDocument& doc, const LabelSpace& argument_types) {
  std::vector<Event> out;
  for (const auto& spans : doc.events) {
    Event e;
    for (const auto& a : spans) {
      auto [type, role] = SplitTypeRole(argument_types.name(a.type));
      e.event_type = type;
      e.arguments.push_back({role, {SubstringByCodepoints(doc.text, a.begin, a.end)}});
    }
    if (!e.arguments.empty()) out.push_back(std::move(e));
  }
  return out;
}

ScoreReport EvaluateDee(const DeeModel& model, const DeeCorpus& corpus) {
  std::vector<EventDocument> pred, gold;
  for (const auto& doc : corpus.documents) {
    pred.push_back(PredictDee(model, doc.id, doc.text));
    gold.push_back({doc.id, GoldEvents(doc, corpus.argument_types)});
  }
  return DeeF1(std::span<const EventDocument>(pred), std::span<const EventDocument>(gold));
}

DeeTrainResult TrainDee(const DeeCorpus& corpus, const TrainConfig& config,
                        const EpochCallback& on_epoch) {
  if (corpus.documents.empty()) throw ArgumentError("train-dee: empty corpus");
  config.Validate();
  Rng rng(config.seed);

  std::vector<DeeWindow> windows;
  for (const auto& doc : corpus.documents) {
    for (DeeWindow& w : MakeWindows(doc, config.window, config.stride, config.event_slots)) {
      if (!w.tokens.empty()) windows.push_back(std::move(w));
    }
  }

  DeeTrainResult result;
  DeeModel& model = result.model;
  model.event_types = corpus.event_types;
  model.argument_types = corpus.argument_types;
  model.config = config;
  for (const auto& w : windows) {
    for (const auto& t : w.tokens) model.vocab.Add(t.text);
  }
  model.params = DeeParams::Random(model.vocab.size(), model.argument_types.size(), config, rng);

  const MatchOptions match{.negate_cost = true, .use_matching = config.use_matching};
  Optimizer<DeeParams> optimizer(config.OptimizerSettings(), model.params);
  std::vector<std::size_t> order(windows.size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double total = 0.0;
    for (std::size_t idx : order) {
      const DeeWindow& w = windows[idx];
      const std::vector<std::size_t> ids = model.vocab.Encode(Words(w.tokens));
      const LabelTensor gold = GoldLabels(w.events, config.event_slots, w.tokens.size(),
                                          model.argument_types.size());
      const Matrix x = Embed(model.params.encoder, ids);
      auto loss_fn = [&](const Matrix& input, DeeParams& grads) {
        LossAndInputGrad out;
        out.loss = DeeLoss(model.params, gold, input, match, &grads, &out.dx);
        EmbedBackward(ids, out.dx, grads.encoder);
        return out;
      };
      try {
        total += FgmStep(model.params, x, loss_fn, config.fgm_epsilon, optimizer).clean_loss;
      } catch (const TrainingError& e) {
        throw TrainingError("train-dee epoch " + std::to_string(epoch) + ", document '" +
                            w.doc_id + "' window at " + std::to_string(w.segment.start_offset) +
                            ": " + e.what());
      }
    }
    EpochStats stats;
    stats.epoch = epoch;
    stats.loss = windows.empty() ? 0.0 : total / static_cast<double>(windows.size());
    stats.f1 = EvaluateDee(model, corpus).overall.f1;
    result.history.push_back(stats);
    if (on_epoch && !on_epoch(stats)) break;
  }
  return result;
}

}  // namespace multiie
