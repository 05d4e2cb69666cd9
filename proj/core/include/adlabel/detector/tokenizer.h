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

#ifndef ADLABEL_DETECTOR_TOKENIZER_H_
#define ADLABEL_DETECTOR_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace adlabel::detector {

struct TokenizerConfig {
  bool lowercase = true;
  std::string url_placeholder = "<url>";
  bool keep_hashtags = true;
  bool keep_mentions = true;

  bool operator==(const TokenizerConfig&) const = default;
};

// Splits a caption into word tokens. Whitespace-separated chunks starting
// with http://, https:// or www. become `url_placeholder`. "#tag" and
// "@handle" stay single tokens (handles may contain inner dots). Everything
// else splits on non-word characters, which are dropped.
std::vector<std::string> Tokenize(std::string_view caption,
                                  const TokenizerConfig& config = {});

// Contiguous n-grams for every n in [min_n, max_n], joined with a single
// space, ordered by start position then length.
std::vector<std::string> NGrams(const std::vector<std::string>& tokens,
                                int min_n, int max_n);

}  // namespace adlabel::detector

#endif  // ADLABEL_DETECTOR_TOKENIZER_H_
