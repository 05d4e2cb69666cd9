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

#include "adlabel/corpus/weak_label.h"

#include <sstream>
#include <unordered_set>

#include "adlabel/common/error.h"
#include "adlabel/common/text.h"
#include "adlabel/corpus/disclosure.h"
#include "adlabel/corpus/ingest.h"
#include "json.hpp"

namespace adlabel::corpus {

using nlohmann::json;

WeakLabeledPost WeakLabel(const Post& post) {
  WeakLabeledPost labeled;
  labeled.post = post;
  if (ScanCaption(post.caption).disclosed) {
    labeled.weak_label = Label::kSponsored;
    labeled.stripped_caption = StripDisclosures(post.caption);
  } else {
    labeled.weak_label = Label::kNonSponsored;
    labeled.stripped_caption = post.caption;
  }
  return labeled;
}

std::vector<WeakLabeledPost> WeakLabel(const Corpus& corpus) {
  std::vector<WeakLabeledPost> out;
  out.reserve(corpus.size());
  for (const Post& post : corpus.posts()) out.push_back(WeakLabel(post));
  return out;
}

std::string WeakLabeledToRecord(const WeakLabeledPost& post) {
  json record = json::parse(PostToRecord(post.post));
  record["weak_label"] = LabelName(post.weak_label);
  record["stripped_caption"] = post.stripped_caption;
  return record.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::vector<WeakLabeledPost> ReadWeakLabeled(std::istream& in) {
  std::vector<WeakLabeledPost> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (text::TrimWhitespace(line).empty()) continue;
    WeakLabeledPost post;
    try {
      post.post = ParsePostRecord(line);
      const json record = json::parse(line);
      const auto label_it = record.find("weak_label");
      const auto stripped_it = record.find("stripped_caption");
      if (label_it == record.end() || !label_it->is_string()) {
        Fail(ErrorCode::kParse, "missing field \"weak_label\"");
      }
      if (stripped_it == record.end() || !stripped_it->is_string()) {
        Fail(ErrorCode::kParse, "missing field \"stripped_caption\"");
      }
      post.weak_label = ParseLabel(label_it->get<std::string>());
      post.stripped_caption = stripped_it->get<std::string>();
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, e.what(), line_number);
    }
    if (!seen.insert(post.post.post_id).second) {
      throw Error(ErrorCode::kConflict,
                  fmt::format("duplicate post_id \"{}\"", post.post.post_id),
                  line_number);
    }
    out.push_back(std::move(post));
  }
  return out;
}

std::vector<WeakLabeledPost> ReadWeakLabeled(std::string_view contents) {
  std::istringstream in{std::string(contents)};
  return ReadWeakLabeled(in);
}

}  // namespace adlabel::corpus
