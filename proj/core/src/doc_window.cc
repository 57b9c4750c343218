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

#include "multiie/doc_window.h"

#include <algorithm>
#include <map>
#include <tuple>

#include "multiie/error.h"
#include "multiie/text.h"

namespace multiie {

std::vector<std::pair<std::size_t, std::size_t>> WindowBounds(std::size_t doc_length,
                                                              std::size_t window,
                                                              std::size_t stride) {
  if (window == 0 || stride == 0 || stride > window) {
    throw ArgumentError("window split: need 1 <= stride (" + std::to_string(stride) +
                        ") <= window (" + std::to_string(window) + ")");
  }
  if (doc_length <= window) return {{0, doc_length}};
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 0;
  while (true) {
    out.emplace_back(start, start + window);
    if (start + window >= doc_length) break;
    start += stride;
    if (start + window > doc_length) {
      out.emplace_back(doc_length - window, doc_length);
      break;
    }
  }
  return out;
}

std::vector<Segment> Split(std::string_view doc_id, std::string_view text, std::size_t window,
                           std::size_t stride) {
  std::u32string cps = DecodeUtf8(text);
  std::vector<Segment> out;
  for (auto [begin, end] : WindowBounds(cps.size(), window, stride)) {
    out.push_back({std::string(doc_id), begin, end - begin,
                   EncodeUtf8(std::u32string_view(cps).substr(begin, end - begin))});
  }
  return out;
}

std::vector<TypedSpan> ResolveSpans(std::vector<TypedSpan> spans) {
  // Exact duplicates keep their best score.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, double> best;
  for (const auto& s : spans) {
    auto [it, inserted] = best.try_emplace({s.type, s.start, s.end}, s.score);
    if (!inserted) it->second = std::max(it->second, s.score);
  }
  std::vector<TypedSpan> unique;
  unique.reserve(best.size());
  for (const auto& [key, score] : best) {
    unique.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), score});
  }
  std::sort(unique.begin(), unique.end(), [](const TypedSpan& a, const TypedSpan& b) {
    if (a.type != b.type) return a.type < b.type;
    if (a.score != b.score) return a.score > b.score;
    if (a.length() != b.length()) return a.length() > b.length();
    return a.start < b.start;
  });
  std::vector<TypedSpan> kept;
  for (const auto& s : unique) {
    const bool conflicts = std::any_of(kept.begin(), kept.end(), [&](const TypedSpan& k) {
      return k.type == s.type && k.start <= s.end && s.start <= k.end;
    });
    if (!conflicts) kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end(), [](const TypedSpan& a, const TypedSpan& b) {
    return std::tie(a.type, a.start, a.end) < std::tie(b.type, b.start, b.end);
  });
  return kept;
}

std::vector<TypedSpan> Merge(const std::vector<std::pair<Segment, std::vector<TypedSpan>>>& parts) {
  std::vector<TypedSpan> shifted;
  for (const auto& [segment, spans] : parts) {
    for (const auto& s : spans) {
      if (s.start > s.end || s.end >= segment.length) {
        throw DataError("merge: span [" + std::to_string(s.start) + ", " + std::to_string(s.end) +
                        "] outside segment of length " + std::to_string(segment.length) +
                        " in document '" + segment.doc_id + "'");
      }
      shifted.push_back(
          {s.type, s.start + segment.start_offset, s.end + segment.start_offset, s.score});
    }
  }
  return ResolveSpans(std::move(shifted));
}

}  // namespace multiie
