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

#ifndef ADLABEL_EXPLAINER_EXPLANATION_H_
#define ADLABEL_EXPLAINER_EXPLANATION_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adlabel/common/label.h"

namespace adlabel::explainer {

enum class ImpliedLabel {
  kSponsored,
  kNotSponsored,
  kLikelySponsored,
  kLikelyNotSponsored,
};

// "Sponsored", "Not sponsored", "Likely sponsored", "Likely not sponsored".
std::string_view ImpliedLabelPhrase(ImpliedLabel label);
Label ToBinary(ImpliedLabel label);

// Matches one label line against the grammar: optional "Label:" prefix,
// case-insensitive, surrounding punctuation and markup ignored. Accepts
// "non-sponsored" style spellings as well.
std::optional<ImpliedLabel> MatchLabelPhrase(std::string_view line);

enum class ExplanationSource { kRemote, kLocalFallback };

std::string_view SourceName(ExplanationSource source);

struct Explanation {
  std::string post_id;
  std::vector<std::string> key_indicators;
  std::string rationale;
  ImpliedLabel implied_label = ImpliedLabel::kNotSponsored;
  ExplanationSource source = ExplanationSource::kRemote;
  // Model or endpoint that produced it.
  std::string producer;
};

// Parses "Key indicators: 'a', 'b'.", free-text rationale lines, and a
// trailing label line. `phrasings` are extra accepted label lines; each must
// itself match the grammar. kFormat when the label line or rationale is
// missing.
Explanation ParseExplanation(std::string_view raw, std::string_view post_id,
                             std::span<const std::string> phrasings = {});

// The inverse of ParseExplanation.
std::string SerializeExplanation(const Explanation& explanation);

// What annotators see: indicators and rationale, never the label line.
std::string FormatForDisplay(const Explanation& explanation);

// Drops label-grammar lines from free text.
std::string StripLabelLines(std::string_view text);

// One JSON object per line, for explanation files.
std::string ExplanationToRecord(const Explanation& explanation);
Explanation ParseExplanationRecord(std::string_view line);

}  // namespace adlabel::explainer

#endif  // ADLABEL_EXPLAINER_EXPLANATION_H_
