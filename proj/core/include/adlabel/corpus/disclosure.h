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

#ifndef ADLABEL_CORPUS_DISCLOSURE_H_
#define ADLABEL_CORPUS_DISCLOSURE_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "adlabel/corpus/post.h"

namespace adlabel::corpus {

// Canonical (lowercase) ad-disclosure hashtags.
inline constexpr std::array<std::string_view, 4> kDisclosureTags = {
    "#ad", "#advertisement", "#spons", "#sponsored"};

// A hashtag token in a caption: '#' at the start of the text or after a
// non-word character, followed by a maximal run of word characters.
struct HashtagSpan {
  std::size_t begin = 0;  // byte offset of '#'
  std::size_t end = 0;    // one past the last byte
  std::string canonical;  // lowercased, including '#'
};

std::vector<HashtagSpan> FindHashtags(std::string_view caption);

struct DisclosureScan {
  std::string post_id;
  bool disclosed = false;
  // Canonical disclosure tags in order of first occurrence, deduplicated.
  std::vector<std::string> matched_tags;
};

// Whole-token, case-insensitive match against kDisclosureTags. "#AD"
// matches; "#adventure" and "#ad_campaign" do not.
DisclosureScan ScanDisclosures(const Post& post);
DisclosureScan ScanCaption(std::string_view caption);

// Removes every disclosure hashtag. Whitespace left doubled by a removal is
// collapsed to the run that preceded the tag; leading and trailing runs
// created at the caption edges are dropped. All other text is untouched.
// The result never scans as disclosed.
std::string StripDisclosures(std::string_view caption);

}  // namespace adlabel::corpus

#endif  // ADLABEL_CORPUS_DISCLOSURE_H_
