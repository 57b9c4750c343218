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

#include "multiie/metrics.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "multiie/error.h"
#include "multiie/match_loss.h"
#include "multiie/text.h"

namespace multiie {
namespace {

struct Counts {
  double matched = 0.0;
  std::size_t predicted = 0;
  std::size_t gold = 0;

  Counts& operator+=(const Counts& o) {
    matched += o.matched;
    predicted += o.predicted;
    gold += o.gold;
    return *this;
  }
};

using TypedCounts = std::map<std::string, Counts>;

ScoreReport ToReport(const TypedCounts& per_type) {
  ScoreReport report;
  Counts total;
  for (const auto& [type, c] : per_type) {
    total += c;
    report.per_type[type] = MakePrf(c.matched, c.predicted, c.gold);
  }
  report.overall = MakePrf(total.matched, total.predicted, total.gold);
  return report;
}

template <class Doc, class KeyFn>
std::vector<std::pair<const Doc*, const Doc*>> PairDocuments(std::span<const Doc> pred,
                                                             std::span<const Doc> gold,
                                                             KeyFn key) {
  std::map<std::string, std::pair<const Doc*, const Doc*>> by_key;
  std::vector<std::string> order;
  auto slot = [&](const std::string& k) -> std::pair<const Doc*, const Doc*>& {
    auto [it, inserted] = by_key.try_emplace(k, nullptr, nullptr);
    if (inserted) order.push_back(k);
    return it->second;
  };
  for (const auto& d : gold) {
    auto& s = slot(key(d));
    if (s.second != nullptr) throw DataError("duplicate gold record '" + key(d) + "'");
    s.second = &d;
  }
  for (const auto& d : pred) {
    auto& s = slot(key(d));
    if (s.first != nullptr) throw DataError("duplicate predicted record '" + key(d) + "'");
    s.first = &d;
  }
  std::vector<std::pair<const Doc*, const Doc*>> out;
  for (const auto& k : order) out.push_back(by_key[k]);
  return out;
}

// Relation identity for scoring: subject, predicate and the set of (key, value).
using RelationKey =
    std::tuple<std::string, std::string, std::vector<std::pair<std::string, std::string>>>;

RelationKey KeyOf(const Relation& r) {
  std::vector<std::pair<std::string, std::string>> slots;
  for (const auto& s : r.object) slots.emplace_back(s.key, s.value);
  std::sort(slots.begin(), slots.end());
  return {r.subject, r.predicate, std::move(slots)};
}

TypedCounts ReCounts(std::span<const Relation> pred, std::span<const Relation> gold) {
  TypedCounts out;
  std::multiset<RelationKey> remaining;
  for (const auto& g : gold) {
    remaining.insert(KeyOf(g));
    ++out[g.predicate].gold;
  }
  std::set<RelationKey> seen;
  for (const auto& p : pred) {
    RelationKey k = KeyOf(p);
    if (!seen.insert(k).second) continue;
    Counts& c = out[p.predicate];
    ++c.predicted;
    auto it = remaining.find(k);
    if (it != remaining.end()) {
      remaining.erase(it);
      c.matched += 1.0;
    }
  }
  return out;
}

using GroupKey = std::pair<std::string, std::string>;  // event type, role

TypedCounts SeeCounts(std::span<const Event> pred, std::span<const Event> gold) {
  std::map<GroupKey, std::vector<std::string>> pred_groups;
  std::map<GroupKey, std::vector<const std::vector<std::string>*>> gold_groups;
  for (const auto& e : pred) {
    for (const auto& a : e.arguments) {
      auto& v = pred_groups[{e.event_type, a.role}];
      if (std::find(v.begin(), v.end(), a.text()) == v.end()) v.push_back(a.text());
    }
  }
  for (const auto& e : gold) {
    for (const auto& a : e.arguments) gold_groups[{e.event_type, a.role}].push_back(&a.mentions);
  }
  TypedCounts out;
  for (const auto& [key, texts] : pred_groups) out[key.first].predicted += texts.size();
  for (const auto& [key, mentions] : gold_groups) {
    Counts& c = out[key.first];
    c.gold += mentions.size();
    auto it = pred_groups.find(key);
    if (it == pred_groups.end()) continue;
    const auto& texts = it->second;
    Matrix scores(texts.size(), mentions.size());
    for (std::size_t p = 0; p < texts.size(); ++p) {
      for (std::size_t g = 0; g < mentions.size(); ++g) {
        double best = 0.0;
        for (const auto& m : *mentions[g]) best = std::max(best, CharF1(texts[p], m));
        scores(p, g) = best;
      }
    }
    std::vector<long> assignment = MaxScoreAssignment(scores);
    for (std::size_t p = 0; p < texts.size(); ++p) {
      if (assignment[p] >= 0) c.matched += scores(p, static_cast<std::size_t>(assignment[p]));
    }
  }
  return out;
}

std::vector<Event> Collapse(std::span<const Event> events) {
  std::vector<Event> out;
  std::set<Event> seen;
  for (const auto& e : events) {
    Event key = e;
    key.trigger.reset();
    std::sort(key.arguments.begin(), key.arguments.end());
    if (seen.insert(key).second) out.push_back(e);
  }
  return out;
}

TypedCounts DeeCounts(std::span<const Event> pred_in, std::span<const Event> gold,
                      MatchStrategy strategy) {
  std::vector<Event> pred = Collapse(pred_in);
  std::map<std::string, std::pair<std::vector<const Event*>, std::vector<const Event*>>> groups;
  for (const auto& e : pred) groups[e.event_type].first.push_back(&e);
  for (const auto& e : gold) groups[e.event_type].second.push_back(&e);
  TypedCounts out;
  for (const auto& [type, members] : groups) {
    const auto& [preds, golds] = members;
    Counts& c = out[type];
    for (const Event* p : preds) c.predicted += p->arguments.size();
    for (const Event* g : golds) c.gold += g->arguments.size();
    if (preds.empty() || golds.empty()) continue;
    Matrix scores(golds.size(), preds.size());
    for (std::size_t g = 0; g < golds.size(); ++g) {
      for (std::size_t p = 0; p < preds.size(); ++p) {
        scores(g, p) = static_cast<double>(CorrectArguments(*preds[p], *golds[g]));
      }
    }
    if (strategy == MatchStrategy::kOptimal) {
      std::vector<long> assignment = MaxScoreAssignment(scores);
      for (std::size_t g = 0; g < golds.size(); ++g) {
        if (assignment[g] >= 0) c.matched += scores(g, static_cast<std::size_t>(assignment[g]));
      }
    } else {
      std::vector<bool> used(preds.size(), false);
      for (std::size_t g = 0; g < golds.size(); ++g) {
        long best = -1;
        for (std::size_t p = 0; p < preds.size(); ++p) {
          if (!used[p] && (best < 0 || scores(g, p) > scores(g, static_cast<std::size_t>(best)))) {
            best = static_cast<long>(p);
          }
        }
        if (best >= 0) {
          used[static_cast<std::size_t>(best)] = true;
          c.matched += scores(g, static_cast<std::size_t>(best));
        }
      }
    }
  }
  return out;
}

template <class Doc, class KeyFn, class CountFn>
ScoreReport ScoreDocuments(std::span<const Doc> pred, std::span<const Doc> gold, KeyFn key,
                           CountFn count) {
  TypedCounts total;
  for (auto [p, g] : PairDocuments(pred, gold, key)) {
    TypedCounts c = count(p, g);
    for (const auto& [type, counts] : c) total[type] += counts;
  }
  return ToReport(total);
}

}  // namespace

Prf MakePrf(double matched, std::size_t predicted, std::size_t gold) {
  Prf out;
  out.matched = matched;
  out.predicted = predicted;
  out.gold = gold;
  out.precision = predicted > 0 ? matched / static_cast<double>(predicted) : 0.0;
  out.recall = gold > 0 ? matched / static_cast<double>(gold) : 0.0;
  const double denom = out.precision + out.recall;
  out.f1 = denom > 0.0 ? 2.0 * out.precision * out.recall / denom : 0.0;
  return out;
}

double CharF1(std::string_view pred, std::string_view gold) {
  std::u32string p = DecodeUtf8(pred);
  std::u32string g = DecodeUtf8(gold);
  std::erase_if(p, IsSpace);
  std::erase_if(g, IsSpace);
  if (p.empty() || g.empty()) return 0.0;
  std::sort(p.begin(), p.end());
  std::sort(g.begin(), g.end());
  std::u32string common;
  std::set_intersection(p.begin(), p.end(), g.begin(), g.end(), std::back_inserter(common));
  if (common.empty()) return 0.0;
  const double precision = static_cast<double>(common.size()) / static_cast<double>(p.size());
  const double recall = static_cast<double>(common.size()) / static_cast<double>(g.size());
  return 2.0 * precision * recall / (precision + recall);
}

Prf ReF1(std::span<const Relation> pred, std::span<const Relation> gold) {
  return ToReport(ReCounts(pred, gold)).overall;
}

ScoreReport ReF1(std::span<const RelationSentence> pred, std::span<const RelationSentence> gold) {
  return ScoreDocuments(
      pred, gold, [](const RelationSentence& s) { return s.text; },
      [](const RelationSentence* p, const RelationSentence* g) {
        std::span<const Relation> ps, gs;
        if (p) ps = p->relations;
        if (g) gs = g->relations;
        return ReCounts(ps, gs);
      });
}

Prf SeeF1(std::span<const Event> pred, std::span<const Event> gold) {
  return ToReport(SeeCounts(pred, gold)).overall;
}

ScoreReport SeeF1(std::span<const EventDocument> pred, std::span<const EventDocument> gold) {
  return ScoreDocuments(
      pred, gold, [](const EventDocument& d) { return d.id; },
      [](const EventDocument* p, const EventDocument* g) {
        std::span<const Event> ps, gs;
        if (p) ps = p->events;
        if (g) gs = g->events;
        return SeeCounts(ps, gs);
      });
}

Prf DeeF1(std::span<const Event> pred, std::span<const Event> gold, MatchStrategy strategy) {
  return ToReport(DeeCounts(pred, gold, strategy)).overall;
}

ScoreReport DeeF1(std::span<const EventDocument> pred, std::span<const EventDocument> gold,
                  MatchStrategy strategy) {
  return ScoreDocuments(
      pred, gold, [](const EventDocument& d) { return d.id; },
      [strategy](const EventDocument* p, const EventDocument* g) {
        std::span<const Event> ps, gs;
        if (p) ps = p->events;
        if (g) gs = g->events;
        return DeeCounts(ps, gs, strategy);
      });
}

std::size_t CorrectArguments(const Event& pred, const Event& gold) {
  if (pred.event_type != gold.event_type) return 0;
  Matrix hits(pred.arguments.size(), gold.arguments.size());
  bool any = false;
  for (std::size_t p = 0; p < pred.arguments.size(); ++p) {
    for (std::size_t g = 0; g < gold.arguments.size(); ++g) {
      const Argument& pa = pred.arguments[p];
      const Argument& ga = gold.arguments[g];
      if (pa.role != ga.role) continue;
      if (std::find(ga.mentions.begin(), ga.mentions.end(), pa.text()) != ga.mentions.end()) {
        hits(p, g) = 1.0;
        any = true;
      }
    }
  }
  if (!any) return 0;
  std::size_t correct = 0;
  std::vector<long> assignment = MaxScoreAssignment(hits);
  for (std::size_t p = 0; p < assignment.size(); ++p) {
    if (assignment[p] >= 0 && hits(p, static_cast<std::size_t>(assignment[p])) > 0.0) ++correct;
  }
  return correct;
}

double MacroAverage(std::optional<double> re, std::optional<double> see,
                    std::optional<double> dee) {
  if (!re || !see || !dee) {
    throw ArgumentError(std::string("macro average: missing subtask score for ") +
                        (!re ? "re" : !see ? "see" : "dee"));
  }
  return (*re + *see + *dee) / 3.0;
}

}  // namespace multiie
