// Copyright 2026 The adlabel Authors.
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

#ifndef ADLABEL_COMMON_TEXT_H_
#define ADLABEL_COMMON_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace adlabel::text {

// One decoded UTF-8 code point and the number of bytes it occupied.
// Invalid sequences decode as U+FFFD with length 1.
struct CodePoint {
  char32_t value = 0;
  std::size_t length = 0;
};

CodePoint DecodeUtf8(std::string_view s, std::size_t pos);

void AppendUtf8(char32_t cp, std::string& out);

// True for code points that can be part of a word, hashtag or mention:
// ASCII alphanumerics, '_', and non-ASCII letters. Punctuation, symbols,
// dashes, quotes, spaces and emoji are not word characters.
bool IsWordCodePoint(char32_t cp);

bool IsSpaceCodePoint(char32_t cp);

// Lowercases ASCII and Latin-1 capitals. Other code
// points pass through unchanged.
char32_t ToLowerCodePoint(char32_t cp);

std::string ToLower(std::string_view s);

std::string_view TrimWhitespace(std::string_view s);

bool EqualsIgnoreCase(std::string_view a, std::string_view b);

bool StartsWithIgnoreCase(std::string_view s, std::string_view prefix);

}  // namespace adlabel::text

#endif  // ADLABEL_COMMON_TEXT_H_
