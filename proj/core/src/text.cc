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

#include "multiie/text.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "multiie/error.h"

namespace multiie {

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    char32_t cp = b0;
    if (b0 >= 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else if (b0 >= 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if (b0 >= 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if (b0 >= 0x80) {
      throw DataError("invalid UTF-8: stray continuation byte at offset " + std::to_string(i));
    }
    if (i + len > text.size()) throw DataError("invalid UTF-8: truncated sequence");
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) throw DataError("invalid UTF-8: bad continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

std::size_t CodepointLength(std::string_view text) {
  std::size_t n = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string SubstringByCodepoints(std::string_view text, std::size_t begin, std::size_t end) {
  std::u32string cps = DecodeUtf8(text);
  if (begin > end || end > cps.size()) {
    throw ArgumentError("SubstringByCodepoints: range [" + std::to_string(begin) + ", " +
                        std::to_string(end) + ") outside text of length " +
                        std::to_string(cps.size()));
  }
  return EncodeUtf8(std::u32string_view(cps).substr(begin, end - begin));
}

std::string NormalizeNfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString in = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  if (nfc->isNormalized(in, status) && U_SUCCESS(status)) return std::string(text);
  status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc->normalize(in, status);
  if (U_FAILURE(status)) throw DataError("NFC normalization failed");
  std::string result;
  out.toUTF8String(result);
  return result;
}

bool IsSpace(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0; }

bool IsCjk(char32_t c) {
  return (c >= 0x4E00 && c <= 0x9FFF) || (c >= 0x3400 && c <= 0x4DBF) ||
         (c >= 0x20000 && c <= 0x2EBEF) || (c >= 0xF900 && c <= 0xFAFF) ||
         (c >= 0x3000 && c <= 0x303F) || (c >= 0xFF00 && c <= 0xFFEF);
}

std::string Trim(std::string_view text) {
  std::u32string cps = DecodeUtf8(text);
  std::size_t b = 0;
  std::size_t e = cps.size();
  while (b < e && IsSpace(cps[b])) ++b;
  while (e > b && IsSpace(cps[e - 1])) --e;
  if (b == 0 && e == cps.size()) return std::string(text);
  return EncodeUtf8(std::u32string_view(cps).substr(b, e - b));
}

std::string Canonicalize(std::string_view text) { return Trim(NormalizeNfc(text)); }

std::vector<Token> Tokenize(std::string_view text) {
  std::u32string cps = DecodeUtf8(text);
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (IsSpace(cps[i])) {
      ++i;
    } else if (IsCjk(cps[i])) {
      tokens.push_back({EncodeUtf8(std::u32string_view(cps).substr(i, 1)), i, i + 1});
      ++i;
    } else {
      std::size_t j = i;
      while (j < cps.size() && !IsSpace(cps[j]) && !IsCjk(cps[j])) ++j;
      tokens.push_back({EncodeUtf8(std::u32string_view(cps).substr(i, j - i)), i, j});
      i = j;
    }
  }
  return tokens;
}

std::string JoinTypeRole(std::string_view event_type, std::string_view role) {
  std::string out(event_type);
  out.push_back(kTypeSeparator);
  out.append(role);
  return out;
}

std::pair<std::string, std::string> SplitTypeRole(std::string_view label) {
  const auto pos = label.find(kTypeSeparator);
  if (pos == std::string_view::npos) return {std::string(label), std::string()};
  return {std::string(label.substr(0, pos)), std::string(label.substr(pos + 1))};
}

}  // namespace multiie
