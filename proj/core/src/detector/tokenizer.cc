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

#include "adlabel/detector/tokenizer.h"

#include "adlabel/common/text.h"

namespace adlabel::detector {
namespace {

bool IsSpaceAt(std::string_view s, std::size_t pos, std::size_t* length) {
  const text::CodePoint cp = text::DecodeUtf8(s, pos);
  *length = cp.length;
  return text::IsSpaceCodePoint(cp.value);
}

bool IsUrlChunk(std::string_view chunk) {
  return text::StartsWithIgnoreCase(chunk, "http://") ||
         text::StartsWithIgnoreCase(chunk, "https://") ||
         text::StartsWithIgnoreCase(chunk, "www.");
}

bool WordAt(std::string_view s, std::size_t pos) {
  return pos < s.size() &&
         text::IsWordCodePoint(text::DecodeUtf8(s, pos).value);
}

// Tokenizes one whitespace-free chunk.
void TokenizeChunk(std::string_view chunk, const TokenizerConfig& config,
                   std::vector<std::string>& out) {
  const auto emit = [&](std::string_view token) {
    out.push_back(config.lowercase ? text::ToLower(token) : std::string(token));
  };
  std::size_t pos = 0;
  while (pos < chunk.size()) {
    const text::CodePoint cp = text::DecodeUtf8(chunk, pos);
    const bool sigil = (cp.value == '#' && config.keep_hashtags) ||
                       (cp.value == '@' && config.keep_mentions);
    if (sigil && WordAt(chunk, pos + 1)) {
      std::size_t end = pos + 1;
      while (end < chunk.size()) {
        if (WordAt(chunk, end)) {
          end += text::DecodeUtf8(chunk, end).length;
        } else if (cp.value == '@' && chunk[end] == '.' &&
                   WordAt(chunk, end + 1)) {
          ++end;
        } else {
          break;
        }
      }
      emit(chunk.substr(pos, end - pos));
      pos = end;
      continue;
    }
    if (text::IsWordCodePoint(cp.value)) {
      std::size_t end = pos;
      while (WordAt(chunk, end)) end += text::DecodeUtf8(chunk, end).length;
      emit(chunk.substr(pos, end - pos));
      pos = end;
      continue;
    }
    pos += cp.length;
  }
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view caption,
                                  const TokenizerConfig& config) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < caption.size()) {
    std::size_t length = 0;
    if (IsSpaceAt(caption, pos, &length)) {
      pos += length;
      continue;
    }
    std::size_t end = pos;
    while (end < caption.size() && !IsSpaceAt(caption, end, &length)) {
      end += length;
    }
    const std::string_view chunk = caption.substr(pos, end - pos);
    if (IsUrlChunk(chunk)) {
      tokens.push_back(config.url_placeholder);
    } else {
      TokenizeChunk(chunk, config, tokens);
    }
    pos = end;
  }
  return tokens;
}

std::vector<std::string> NGrams(const std::vector<std::string>& tokens,
                                int min_n, int max_n) {
  std::vector<std::string> grams;
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    std::string gram;
    for (int n = 1; n <= max_n && start + n <= tokens.size(); ++n) {
      if (n > 1) gram += ' ';
      gram += tokens[start + n - 1];
      if (n >= min_n) grams.push_back(gram);
    }
  }
  return grams;
}

}  // namespace adlabel::detector
