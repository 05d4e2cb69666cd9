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

#ifndef ADLABEL_CORPUS_POST_H_
#define ADLABEL_CORPUS_POST_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace adlabel::corpus {

enum class FollowerTier { kMicro, kMega };

inline constexpr std::int64_t kMicroMinFollowers = 100'000;
inline constexpr std::int64_t kMegaMinFollowers = 600'000;

// Micro: [100k, 600k). Mega: >= 600k. Smaller accounts are outside the
// studied population and rejected with kValidation.
FollowerTier TierForFollowers(std::int64_t followers);

std::string_view TierName(FollowerTier tier);

using Timestamp = std::chrono::sys_seconds;

struct Post {
  std::string post_id;
  std::string influencer_id;
  std::string caption;
  Timestamp published_at{};
  std::int64_t followers = 0;
  FollowerTier follower_tier = FollowerTier::kMicro;
};

// UTC calendar year of publication.
int PublishedYear(const Post& post);

// ISO-8601 / RFC 3339, e.g. "2021-06-01T12:30:00Z". Numeric offsets are
// accepted and normalized to UTC; fractional seconds are truncated.
// Throws kParse.
Timestamp ParseTimestamp(std::string_view text);

// Always "YYYY-MM-DDTHH:MM:SSZ".
std::string FormatTimestamp(Timestamp time);

// An ordered collection of posts with unique ids.
class Corpus {
 public:
  Corpus() = default;

  // kConflict if the id is taken.
  void Add(Post post);

  const std::vector<Post>& posts() const { return posts_; }
  std::size_t size() const { return posts_.size(); }
  bool empty() const { return posts_.empty(); }

  // nullptr when absent.
  const Post* Find(std::string_view post_id) const;

 private:
  std::vector<Post> posts_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace adlabel::corpus

#endif  // ADLABEL_CORPUS_POST_H_
