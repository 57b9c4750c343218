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

#ifndef MULTIIE_DOC_WINDOW_H_
#define MULTIIE_DOC_WINDOW_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "multiie/pointer.h"

namespace multiie {

inline constexpr std::size_t kDefaultWindow = 512;

// A windowed slice of a document. Offsets and lengths count code points.
struct Segment {
  std::string doc_id;
  std::size_t start_offset = 0;
  std::size_t length = 0;
  std::string text;

  std::size_t end_offset() const { return start_offset + length; }
};

// Window starts at 0, stride, 2*stride, ...; the last start is clamped so the
// final segment ends exactly at the document end. Throws ArgumentError unless
// 1 <= stride <= window.
std::vector<std::pair<std::size_t, std::size_t>> WindowBounds(std::size_t doc_length,
                                                              std::size_t window,
                                                              std::size_t stride);

std::vector<Segment> Split(std::string_view doc_id, std::string_view text, std::size_t window,
                           std::size_t stride);

// Spans are in segment-local code point coordinates (inclusive end). The
// result is in document coordinates: exact duplicates collapse, and among
// overlapping spans of one type the higher score wins, then the longer span,
// then the smaller start. Output sorted by (type, start, end).
// Throws DataError for a span outside its segment.
std::vector<TypedSpan> Merge(const std::vector<std::pair<Segment, std::vector<TypedSpan>>>& parts);

// The conflict-resolution step of Merge on spans already in document
// coordinates.
std::vector<TypedSpan> ResolveSpans(std::vector<TypedSpan> spans);

}  // namespace multiie

#endif  // MULTIIE_DOC_WINDOW_H_
