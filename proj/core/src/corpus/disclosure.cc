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

#include "adlabel/corpus/disclosure.h"

#include <algorithm>
#include <optional>

#include "adlabel/common/text.h"

namespace adlabel::corpus {
namespace {

bool IsDisclosureTag(std::string_view canonical) {
  return std::find(kDisclosureTags.begin(), kDisclosureTags.end(), canonical) !=
         kDisclosureTags.end();
}

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// First disclosure hashtag in `caption`, if any.
std::optional<HashtagSpan> FirstDisclosure(std::string_view caption) {
  for (HashtagSpan& span : FindHashtags(caption)) {
    if (IsDisclosureTag(span.canonical)) return std::move(span);
  }
  return std::nullopt;
}

}  // namespace

std::vector<HashtagSpan> FindHashtags(std::string_view caption) {
  std::vector<HashtagSpan> spans;
  bool prev_is_word = false;
  std::size_t pos = 0;
  while (pos < caption.size()) {
    const text::CodePoint cp = text::DecodeUtf8(caption, pos);
    if (cp.value == '#' && !prev_is_word) {
      std::size_t end = pos + 1;
      while (end < caption.size()) {
        const text::CodePoint next = text::DecodeUtf8(caption, end);
        if (!text::IsWordCodePoint(next.value)) break;
        end += next.length;
      }
      if (end > pos + 1) {
        spans.push_back(
            {pos, end, text::ToLower(caption.substr(pos, end - pos))});
        prev_is_word = true;
        pos = end;
        continue;
      }
    }
    prev_is_word = text::IsWordCodePoint(cp.value);
    pos += cp.length;
  }
  return spans;
}

DisclosureScan ScanCaption(std::string_view caption) {
  DisclosureScan scan;
  for (const HashtagSpan& span : FindHashtags(caption)) {
    if (!IsDisclosureTag(span.canonical)) continue;
    if (std::find(scan.matched_tags.begin(), scan.matched_tags.end(),
                  span.canonical) == scan.matched_tags.end()) {
      scan.matched_tags.push_back(span.canonical);
    }
  }
  scan.disclosed = !scan.matched_tags.empty();
  return scan;
}

DisclosureScan ScanDisclosures(const Post& post) {
  DisclosureScan scan = ScanCaption(post.caption);
  scan.post_id = post.post_id;
  return scan;
}

std::string StripDisclosures(std::string_view caption) {
  std::string out(caption);
  // Removing a tag can turn a glued neighbour ("#ad#ad") into a fresh
  // token, so repeat until a scan comes back clean.
  while (const auto span = FirstDisclosure(out)) {
    std::size_t before = span->begin;
    while (before > 0 && IsAsciiSpace(out[before - 1])) --before;
    std::size_t after = span->end;
    while (after < out.size() && IsAsciiSpace(out[after])) ++after;

    const bool at_start = before == 0;
    const bool at_end = after == out.size();
    if (at_start || at_end) {
      out.erase(before, after - before);
    } else if (before < span->begin) {
      // Keep the preceding whitespace run, drop the following one.
      out.erase(span->begin, after - span->begin);
    } else {
      out.erase(span->begin, span->end - span->begin);
    }
  }
  return out;
}

}  // namespace adlabel::corpus
