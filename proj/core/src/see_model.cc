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

#include "multiie/see_model.h"

#include <algorithm>
#include <numeric>
#include <optional>

#include "multiie/error.h"
#include "multiie/fgm.h"

namespace multiie {
namespace {

void ScaleGrid(PointerGrid& grid, double scale) {
  grid.starts *= scale;
  grid.ends *= scale;
}

std::optional<PooledTrigger> PoolSpans(const Matrix& h, std::span<const TypedSpan> spans) {
  std::vector<std::vector<double>> reps;
  reps.reserve(spans.size());
  for (const auto& s : spans) reps.push_back(SpanRepresentation(h, s));
  return PoolTriggers(reps);
}

std::vector<std::string> Words(std::span<const Token> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

}  // namespace

SeeParams SeeParams::Random(std::size_t vocab_size, std::size_t event_types,
                            std::size_t argument_types, const TrainConfig& config, Rng& rng) {
  SeeParams p;
  p.encoder = ToyEncoder::Random(vocab_size, config.dim, config.projection, rng);
  p.fusion = FusionParams::Random(config.dim, rng);
  p.arguments = PointerParams::Random(config.dim, argument_types, config.pointer_bias, rng);
  p.triggers = PointerParams::Random(config.dim, event_types, config.pointer_bias, rng);
  return p;
}

double SeeLoss(const SeeParams& params, std::span<const TypedSpan> arguments,
               std::span<const TypedSpan> triggers, const Matrix& x, const SeeLossWeights& weights,
               SeeParams* grads, Matrix* dx) {
  const std::size_t l = x.rows();
  const bool trigger_task = weights.trigger > 0.0;
  const Matrix h = EncodeEmbeddings(params.encoder, x);

  std::optional<PooledTrigger> pooled;
  FusionCache fusion_cache;
  Matrix fused;
  BceResult trigger_bce;
  if (trigger_task) {
    trigger_bce = BceLoss(Score(h, params.triggers),
                          GoldGrid(l, params.triggers.types(),
                                   std::vector<TypedSpan>(triggers.begin(), triggers.end())));
    pooled = PoolSpans(h, triggers);
  }
  // The fused rows are merged into the token representations as a residual.
  if (pooled) fused = h + Fuse(h, pooled->vector, params.fusion, &fusion_cache);
  const Matrix& argument_input = pooled ? fused : h;
  BceResult argument_bce = BceLoss(
      Score(argument_input, params.arguments),
      GoldGrid(l, params.arguments.types(),
               std::vector<TypedSpan>(arguments.begin(), arguments.end())));

  double loss = weights.argument * argument_bce.loss;
  if (trigger_task) loss += weights.trigger * trigger_bce.loss;
  if (grads == nullptr) return loss;

  ScaleGrid(argument_bce.grad, weights.argument);
  Matrix dinput = PointerBackward(argument_input, params.arguments, argument_bce.grad,
                                  grads->arguments);
  Matrix dh;
  if (pooled) {
    FusionInputGrads fg =
        FuseBackward(h, pooled->vector, params.fusion, fusion_cache, dinput, grads->fusion);
    dh = dinput + fg.tokens;
    // The max-pool routes each coordinate to the trigger that supplied it;
    // the span mean spreads it evenly over that trigger's tokens.
    for (std::size_t k = 0; k < fg.trigger.size(); ++k) {
      const TypedSpan& s = triggers[pooled->argmax[k]];
      const double share = fg.trigger[k] / static_cast<double>(s.length());
      for (std::size_t j = s.start; j <= s.end; ++j) dh(j, k) += share;
    }
  } else {
    dh = std::move(dinput);
  }
  if (trigger_task) {
    ScaleGrid(trigger_bce.grad, weights.trigger);
    dh += PointerBackward(h, params.triggers, trigger_bce.grad, grads->triggers);
  }
  Matrix dembed = EncodeEmbeddingsBackward(params.encoder, x, h, dh, grads->encoder);
  if (dx != nullptr) *dx = std::move(dembed);
  return loss;
}

SeeSpans PredictSeeSpans(const SeeParams& params, const Matrix& x, bool use_triggers,
                         double threshold) {
  SeeSpans out;
  const Matrix h = EncodeEmbeddings(params.encoder, x);
  std::optional<PooledTrigger> pooled;
  if (use_triggers) {
    out.triggers = DecodeSpans(Score(h, params.triggers), threshold);
    pooled = PoolSpans(h, out.triggers);
  }
  const Matrix fused = pooled ? h + Fuse(h, pooled->vector, params.fusion) : h;
  out.arguments = DecodeSpans(Score(fused, params.arguments), threshold);
  return out;
}

std::vector<Event> SpansToEvents(const std::string& text, std::span<const Token> tokens,
                                 std::span<const TypedSpan> arguments,
                                 std::span<const TypedSpan> triggers,
                                 const LabelSpace& event_types, const LabelSpace& argument_types) {
  auto surface = [&](const TypedSpan& s) {
    return SubstringByCodepoints(text, tokens[s.start].begin, tokens[s.end].end);
  };
  std::vector<Event> events;
  auto event_for = [&](const std::string& type) -> Event& {
    for (auto& e : events) {
      if (e.event_type == type) return e;
    }
    events.push_back({type, {}, std::nullopt});
    return events.back();
  };
  for (const auto& s : arguments) {
    auto [type, role] = SplitTypeRole(argument_types.name(s.type));
    event_for(type).arguments.push_back({role, {surface(s)}});
  }
  for (auto& e : events) {
    for (const auto& t : triggers) {
      if (event_types.name(t.type) == e.event_type) {
        e.trigger = surface(t);
        break;
      }
    }
  }
  return events;
}

EventDocument PredictSee(const SeeModel& model, const std::string& id, const std::string& text) {
  std::vector<Token> tokens = Tokenize(text);
  EventDocument doc{id, {}};
  if (tokens.empty()) return doc;
  std::vector<std::string> words = Words(tokens);
  const Matrix x = Embed(model.params.encoder, model.vocab.Encode(words));
  SeeSpans spans =
      PredictSeeSpans(model.params, x, model.use_triggers(), model.config.threshold);
  doc.events = SpansToEvents(text, tokens, spans.arguments, spans.triggers, model.event_types,
                             model.argument_types);
  return doc;
}

ScoreReport EvaluateSee(const SeeModel& model, const SeeCorpus& corpus) {
  std::vector<EventDocument> pred, gold;
  for (const auto& ex : corpus.examples) {
    pred.push_back(PredictSee(model, ex.id, ex.text));
    gold.push_back({ex.id, SpansToEvents(ex.text, ex.tokens, ex.arguments, ex.triggers,
                                         corpus.event_types, corpus.argument_types)});
  }
  return SeeF1(std::span<const EventDocument>(pred), std::span<const EventDocument>(gold));
}

SeeTrainResult TrainSee(const SeeCorpus& corpus, const TrainConfig& config,
                        const SynonymDictionary* synonyms, const EpochCallback& on_epoch) {
  if (corpus.examples.empty()) throw ArgumentError("train-see: empty corpus");
  config.Validate();
  Rng rng(config.seed);

  SeeTrainResult result;
  SeeModel& model = result.model;
  model.event_types = corpus.event_types;
  model.argument_types = corpus.argument_types;
  model.config = config;
  for (const auto& ex : corpus.examples) {
    for (const auto& t : ex.tokens) model.vocab.Add(t.text);
  }
  if (synonyms != nullptr) {
    for (const auto& t : synonyms->Tokens()) model.vocab.Add(t);
  }
  model.params = SeeParams::Random(model.vocab.size(), model.event_types.size(),
                                   model.argument_types.size(), config, rng);

  const SeeLossWeights weights{config.argument_weight, config.trigger_weight};
  Optimizer<SeeParams> optimizer(config.OptimizerSettings(), model.params);
  std::vector<std::size_t> order(corpus.examples.size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double total = 0.0;
    for (std::size_t idx : order) {
      const SeeExample& ex = corpus.examples[idx];
      if (ex.tokens.empty()) continue;
      std::vector<std::string> words = Words(ex.tokens);
      std::vector<TypedSpan> arguments = ex.arguments;
      std::vector<TypedSpan> triggers = ex.triggers;
      if (config.delete_prob > 0.0) {
        std::vector<TypedSpan> all = arguments;
        all.insert(all.end(), triggers.begin(), triggers.end());
        DeletionResult d = RandomDelete(words, all, config.delete_prob, rng);
        words = std::move(d.tokens);
        arguments.assign(d.spans.begin(), d.spans.begin() + arguments.size());
        triggers.assign(d.spans.begin() + arguments.size(), d.spans.end());
      }
      if (config.synonym_prob > 0.0 && synonyms != nullptr) {
        std::vector<TypedSpan> all = arguments;
        all.insert(all.end(), triggers.begin(), triggers.end());
        std::vector<bool> covered = CoveredTokens(words.size(), all);
        words = SynonymsReplace(words, *synonyms, config.synonym_prob, rng, covered);
      }
      const std::vector<std::size_t> ids = model.vocab.Encode(words);
      const Matrix x = Embed(model.params.encoder, ids);
      auto loss_fn = [&](const Matrix& input, SeeParams& grads) {
        LossAndInputGrad out;
        out.loss = SeeLoss(model.params, arguments, triggers, input, weights, &grads, &out.dx);
        EmbedBackward(ids, out.dx, grads.encoder);
        return out;
      };
      try {
        total += FgmStep(model.params, x, loss_fn, config.fgm_epsilon, optimizer).clean_loss;
      } catch (const TrainingError& e) {
        throw TrainingError("train-see epoch " + std::to_string(epoch) + ", sentence '" + ex.id +
                            "': " + e.what());
      }
    }
    EpochStats stats;
    stats.epoch = epoch;
    stats.loss = total / static_cast<double>(corpus.examples.size());
    stats.f1 = EvaluateSee(model, corpus).overall.f1;
    result.history.push_back(stats);
    if (on_epoch && !on_epoch(stats)) break;
  }
  return result;
}

}  // namespace multiie
