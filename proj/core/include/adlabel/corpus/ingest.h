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

#ifndef ADLABEL_CORPUS_INGEST_H_
#define ADLABEL_CORPUS_INGEST_H_

#include <istream>
#include <string>
#include <string_view>

#include "adlabel/corpus/post.h"

namespace adlabel::corpus {

// Reads line-delimited JSON records, one post per line:
//   {"post_id": "...", "influencer_id": "...", "caption": "...",
//    "published_at": "2021-06-01T12:30:00Z", "followers": 250000}
// Blank lines are skipped. A malformed record throws kParse carrying the
// 1-based line; a repeated post_id throws kConflict.
Corpus IngestPosts(std::istream& in);
Corpus IngestPosts(std::string_view contents);

// Parses a single record; the caller attaches line context.
Post ParsePostRecord(std::string_view line);

// Serializes one post in the ingestion format (no trailing newline).
std::string PostToRecord(const Post& post);

}  // namespace adlabel::corpus

#endif  // ADLABEL_CORPUS_INGEST_H_
