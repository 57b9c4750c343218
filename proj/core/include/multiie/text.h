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

#ifndef MULTIIE_TEXT_H_
#define MULTIIE_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace multiie {

// Character offsets throughout the library count Unicode code points.

std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);
std::size_t CodepointLength(std::string_view text);
// Code points [begin, end) of `text`, re-encoded as UTF-8.
std::string SubstringByCodepoints(std::string_view text, std::size_t begin, std::size_t end);

// Unicode NFC normalization.
std::string NormalizeNfc(std::string_view text);
// Strips leading/trailing Unicode whitespace.
std::string Trim(std::string_view text);
// NFC + trim; the canonical form used before any exact string comparison.
std::string Canonicalize(std::string_view text);

bool IsCjk(char32_t c);
bool IsSpace(char32_t c);

struct Token {
  std::string text;
  std::size_t begin = 0;  // code point offset, inclusive
  std::size_t end = 0;    // code point offset, exclusive
};

// Hybrid tokenizer: every CJK code point is its own token, other text splits
// on whitespace.
std::vector<Token> Tokenize(std::string_view text);

// Unit separator joining event type and role into one entity-type label.
inline constexpr char kTypeSeparator = '\x1f';
std::string JoinTypeRole(std::string_view event_type, std::string_view role);
std::pair<std::string, std::string> SplitTypeRole(std::string_view label);

}  // namespace multiie

#endif  // MULTIIE_TEXT_H_
