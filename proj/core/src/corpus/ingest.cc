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

#include "adlabel/corpus/ingest.h"

#include <sstream>

#include "adlabel/common/error.h"
#include "adlabel/common/text.h"
#include "json.hpp"

namespace adlabel::corpus {
namespace {

using nlohmann::json;

std::string RequireString(const json& record, std::string_view field) {
  const auto it = record.find(field);
  if (it == record.end())
    Fail(ErrorCode::kParse, "missing field \"{}\"", field);
  if (!it->is_string()) {
    Fail(ErrorCode::kParse, "field \"{}\" must be a string", field);
  }
  return it->get<std::string>();
}

}  // namespace

Post ParsePostRecord(std::string_view line) {
  const json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (record.is_discarded()) Fail(ErrorCode::kParse, "not valid JSON");
  if (!record.is_object()) {
    Fail(ErrorCode::kParse, "record must be a JSON object");
  }
  Post post;
  post.post_id = RequireString(record, "post_id");
  if (post.post_id.empty()) Fail(ErrorCode::kParse, "empty post_id");
  post.influencer_id = RequireString(record, "influencer_id");
  post.caption = RequireString(record, "caption");
  post.published_at = ParseTimestamp(RequireString(record, "published_at"));

  const auto followers = record.find("followers");
  if (followers == record.end()) {
    Fail(ErrorCode::kParse, "missing field \"followers\"");
  }
  if (!followers->is_number_integer()) {
    Fail(ErrorCode::kParse, "field \"followers\" must be an integer");
  }
  post.followers = followers->get<std::int64_t>();
  post.follower_tier = TierForFollowers(post.followers);
  return post;
}

Corpus IngestPosts(std::istream& in) {
  Corpus corpus;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (text::TrimWhitespace(line).empty()) continue;
    try {
      corpus.Add(ParsePostRecord(line));
    } catch (const Error& e) {
      const ErrorCode code =
          e.code() == ErrorCode::kConflict ? e.code() : ErrorCode::kParse;
      throw Error(code, e.what(), line_number);
    }
  }
  return corpus;
}

Corpus IngestPosts(std::string_view contents) {
  std::istringstream in{std::string(contents)};
  return IngestPosts(in);
}

std::string PostToRecord(const Post& post) {
  const json record = {
      {"post_id", post.post_id},
      {"influencer_id", post.influencer_id},
      {"caption", post.caption},
      {"published_at", FormatTimestamp(post.published_at)},
      {"followers", post.followers},
  };
  return record.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace adlabel::corpus
