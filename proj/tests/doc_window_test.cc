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

#include <set>
#include <tuple>

#include <gtest/gtest.h>

#include "multiie/doc_window.h"
#include "multiie/error.h"
#include "multiie/text.h"
#include "support/oracles.h"

namespace multiie {
namespace {

using Bounds = std::vector<std::pair<std::size_t, std::size_t>>;

TEST(WindowBounds, HandEnumeration) {
  EXPECT_EQ(WindowBounds(10, 4, 2), (Bounds{{0, 4}, {2, 6}, {4, 8}, {6, 10}}));
}

TEST(WindowBounds, ShortDocumentIsOneSegment) {
  EXPECT_EQ(WindowBounds(7, 8, 4), (Bounds{{0, 7}}));
  EXPECT_EQ(WindowBounds(8, 8, 4), (Bounds{{0, 8}}));
  EXPECT_EQ(WindowBounds(0, 8, 4), (Bounds{{0, 0}}));
}

TEST(WindowBounds, LastWindowIsClamped) {
  EXPECT_EQ(WindowBounds(11, 4, 3), (Bounds{{0, 4}, {3, 7}, {6, 10}, {7, 11}}));
}

TEST(WindowBounds, RejectsBadParameters) {
  EXPECT_THROW(WindowBounds(10, 0, 0), ArgumentError);
  EXPECT_THROW(WindowBounds(10, 4, 0), ArgumentError);
  EXPECT_THROW(WindowBounds(10, 4, 5), ArgumentError);
}

TEST(WindowBounds, CoversEveryCharacter) {
  Rng rng(1);
  std::uniform_int_distribution<std::size_t> len(1, 400), win(1, 64);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = len(rng), w = win(rng);
    const std::size_t s = std::uniform_int_distribution<std::size_t>(1, w)(rng);
    std::vector<int> covered(n, 0);
    for (auto [b, e] : WindowBounds(n, w, s)) {
      EXPECT_LE(e, n);
      EXPECT_LE(e - b, w);
      for (std::size_t i = b; i < e; ++i) ++covered[i];
    }
    for (std::size_t i = 0; i < n; ++i) EXPECT_GE(covered[i], 1) << "n=" << n << " i=" << i;
  }
}

TEST(Split, CountsCodePoints) {
  const auto segs = Split("d", "甲乙丙丁戊己", 4, 2);
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[0].text, "甲乙丙丁");
  EXPECT_EQ(segs[1].text, "丙丁戊己");
  EXPECT_EQ(segs[1].start_offset, 2u);
  EXPECT_EQ(segs[1].length, 4u);
  EXPECT_EQ(segs[1].doc_id, "d");
}

TEST(Merge, SingleSegmentShiftsOffsets) {
  const Segment seg{"d", 10, 8, ""};
  const auto out = Merge({{seg, {{0, 1, 3, 0.9}, {1, 0, 0, 0.7}}}});
  EXPECT_EQ(out, (std::vector<TypedSpan>{{0, 11, 13, 0.9}, {1, 10, 10, 0.7}}));
}

TEST(Merge, OverlapDuplicatesCollapse) {
  const Segment a{"d", 0, 6, ""}, b{"d", 3, 6, ""};
  const auto out = Merge({{a, {{0, 4, 5, 0.6}}}, {b, {{0, 1, 2, 0.8}}}});
  EXPECT_EQ(out, (std::vector<TypedSpan>{{0, 4, 5, 0.8}}));
}

TEST(Merge, ConflictsResolveByScoreThenLengthThenStart) {
  EXPECT_EQ(ResolveSpans({{0, 2, 4, 0.5}, {0, 3, 6, 0.9}}), (std::vector<TypedSpan>{{0, 3, 6, 0.9}}));
  EXPECT_EQ(ResolveSpans({{0, 2, 4, 0.9}, {0, 3, 8, 0.9}}), (std::vector<TypedSpan>{{0, 3, 8, 0.9}}));
  EXPECT_EQ(ResolveSpans({{0, 4, 6, 0.9}, {0, 2, 4, 0.9}}), (std::vector<TypedSpan>{{0, 2, 4, 0.9}}));
  // Different types never conflict.
  EXPECT_EQ(ResolveSpans({{1, 2, 4, 0.9}, {0, 2, 4, 0.5}}),
            (std::vector<TypedSpan>{{0, 2, 4, 0.5}, {1, 2, 4, 0.9}}));
}

TEST(Merge, SpanOutsideSegmentThrows) {
  const Segment seg{"d", 0, 4, ""};
  EXPECT_THROW(Merge({{seg, {{0, 2, 4, 1.0}}}}), DataError);
  EXPECT_THROW(Merge({{seg, {{0, 3, 2, 1.0}}}}), DataError);
}

// Random gold spans, non-overlapping within a type, in document coordinates.
std::vector<TypedSpan> RandomGold(std::size_t n, Rng& rng) {
  std::vector<TypedSpan> out;
  std::uniform_int_distribution<std::size_t> pos(0, n - 1), len(1, 12);
  for (std::size_t type = 0; type < 3; ++type) {
    std::vector<bool> taken(n, false);
    for (int k = 0; k < 8; ++k) {
      const std::size_t s = pos(rng), e = std::min(n - 1, s + len(rng) - 1);
      bool free = true;
      for (std::size_t i = s; i <= e; ++i) free = free && !taken[i];
      if (!free) continue;
      for (std::size_t i = s; i <= e; ++i) taken[i] = true;
      out.push_back({type, s, e, 1.0});
    }
  }
  return out;
}

TEST(Merge, SplitProjectMergeRoundTrip) {
  Rng rng(2);
  const std::pair<std::size_t, std::size_t> settings[] = {{128, 64}, {256, 128}, {512, 256}};
  for (int doc = 0; doc < 100; ++doc) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(20, 1500)(rng);
    const auto gold = RandomGold(n, rng);
    for (auto [w, s] : settings) {
      std::vector<std::pair<Segment, std::vector<TypedSpan>>> parts;
      std::set<std::size_t> inside;
      for (auto [b, e] : WindowBounds(n, w, s)) {
        Segment seg{"doc", b, e - b, ""};
        std::vector<TypedSpan> local;
        for (std::size_t g = 0; g < gold.size(); ++g) {
          if (gold[g].start >= b && gold[g].end < e) {
            local.push_back({gold[g].type, gold[g].start - b, gold[g].end - b, 1.0});
            inside.insert(g);
          }
        }
        parts.emplace_back(seg, local);
      }
      const auto merged = Merge(parts);
      std::vector<TypedSpan> want;
      for (std::size_t g : inside) want.push_back(gold[g]);
      EXPECT_EQ(merged, ResolveSpans(want));
      for (std::size_t g : inside) {
        EXPECT_TRUE(std::any_of(merged.begin(), merged.end(),
                                [&](const TypedSpan& m) { return m.SameExtent(gold[g]); }));
      }
      for (const auto& m : merged) EXPECT_LT(m.end, n);
    }
  }
}

TEST(Merge, Idempotent) {
  Rng rng(3);
  std::uniform_int_distribution<std::size_t> pos(0, 50), len(0, 6), type(0, 2);
  std::uniform_real_distribution<double> score(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<TypedSpan> spans;
    for (int k = 0; k < 12; ++k) {
      const std::size_t s = pos(rng);
      spans.push_back({type(rng), s, s + len(rng), std::round(score(rng) * 4) / 4});
    }
    const auto once = ResolveSpans(spans);
    EXPECT_EQ(ResolveSpans(once), once);
  }
}

}  // namespace
}  // namespace multiie
