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

#ifndef ADLABEL_COMMON_LABEL_H_
#define ADLABEL_COMMON_LABEL_H_

#include <optional>
#include <string_view>

namespace adlabel {

// Binary annotation / prediction label.
enum class Label { kSponsored, kNonSponsored };

// Canonical spelling used in every file this library writes.
std::string_view LabelName(Label label);

// Accepts the canonical names plus common spellings, case-insensitively:
// "sponsored", "nonsponsored", "non-sponsored", "non_sponsored",
// "not sponsored". Anything else throws a kParse Error.
Label ParseLabel(std::string_view text);

inline Label Opposite(Label label) {
  return label == Label::kSponsored ? Label::kNonSponsored : Label::kSponsored;
}

// A cell in an annotation grid; nullopt means the rater did not label it.
using LabelCell = std::optional<Label>;

}  // namespace adlabel

#endif  // ADLABEL_COMMON_LABEL_H_
