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

#include "adlabel/common/label.h"

#include <string>

#include "adlabel/common/error.h"
#include "adlabel/common/text.h"

namespace adlabel {

std::string_view LabelName(Label label) {
  return label == Label::kSponsored ? "Sponsored" : "NonSponsored";
}

Label ParseLabel(std::string_view text) {
  const std::string lowered = text::ToLower(text::TrimWhitespace(text));
  if (lowered == "sponsored") return Label::kSponsored;
  if (lowered == "nonsponsored" || lowered == "non-sponsored" ||
      lowered == "non_sponsored" || lowered == "not sponsored") {
    return Label::kNonSponsored;
  }
  throw Error(ErrorCode::kParse, fmt::format("unknown label \"{}\"", text));
}

}  // namespace adlabel
