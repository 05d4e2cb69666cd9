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

#include "adlabel/corpus/post.h"

#include "adlabel/common/error.h"

namespace adlabel::corpus {
namespace {

// Parses exactly `digits` decimal digits at `pos`.
bool ReadInt(std::string_view s, std::size_t& pos, int digits, int& out) {
  if (pos + digits > s.size()) return false;
  out = 0;
  for (int i = 0; i < digits; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    out = out * 10 + (c - '0');
  }
  pos += digits;
  return true;
}

bool Expect(std::string_view s, std::size_t& pos, char c) {
  if (pos >= s.size() || s[pos] != c) return false;
  ++pos;
  return true;
}

}  // namespace

FollowerTier TierForFollowers(std::int64_t followers) {
  if (followers >= kMegaMinFollowers) return FollowerTier::kMega;
  if (followers >= kMicroMinFollowers) return FollowerTier::kMicro;
  Fail(ErrorCode::kValidation,
       "follower count {} is below the micro-influencer tier ({})", followers,
       kMicroMinFollowers);
}

std::string_view TierName(FollowerTier tier) {
  return tier == FollowerTier::kMega ? "Mega" : "Micro";
}

int PublishedYear(const Post& post) {
  const std::chrono::year_month_day ymd{
      std::chrono::floor<std::chrono::days>(post.published_at)};
  return static_cast<int>(ymd.year());
}

Timestamp ParseTimestamp(std::string_view text) {
  using namespace std::chrono;
  const auto bad = [&]() {
    Fail(ErrorCode::kParse, "bad timestamp \"{}\" (want YYYY-MM-DDTHH:MM:SSZ)",
         text);
  };
  std::size_t pos = 0;
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  if (!ReadInt(text, pos, 4, y) || !Expect(text, pos, '-') ||
      !ReadInt(text, pos, 2, mo) || !Expect(text, pos, '-') ||
      !ReadInt(text, pos, 2, d)) {
    bad();
  }
  if (pos >= text.size() ||
      (text[pos] != 'T' && text[pos] != 't' && text[pos] != ' ')) {
    bad();
  }
  ++pos;
  if (!ReadInt(text, pos, 2, h) || !Expect(text, pos, ':') ||
      !ReadInt(text, pos, 2, mi) || !Expect(text, pos, ':') ||
      !ReadInt(text, pos, 2, sec)) {
    bad();
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) bad();
  }
  int offset_minutes = 0;
  if (pos < text.size() && (text[pos] == 'Z' || text[pos] == 'z')) {
    ++pos;
  } else if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    const int sign = text[pos] == '-' ? -1 : 1;
    ++pos;
    int oh = 0, om = 0;
    if (!ReadInt(text, pos, 2, oh) || !Expect(text, pos, ':') ||
        !ReadInt(text, pos, 2, om) || oh > 23 || om > 59) {
      bad();
    }
    offset_minutes = sign * (oh * 60 + om);
  } else {
    bad();
  }
  if (pos != text.size()) bad();

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) bad();
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec} -
         minutes{offset_minutes};
}

std::string FormatTimestamp(Timestamp time) {
  using namespace std::chrono;
  const sys_days day_start = floor<days>(time);
  const year_month_day ymd{day_start};
  const hh_mm_ss clock{time - day_start};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z",
                     static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()),
                     static_cast<unsigned>(ymd.day()), clock.hours().count(),
                     clock.minutes().count(), clock.seconds().count());
}

void Corpus::Add(Post post) {
  const auto [it, inserted] = index_.emplace(post.post_id, posts_.size());
  if (!inserted) {
    Fail(ErrorCode::kConflict, "duplicate post_id \"{}\"", post.post_id);
  }
  posts_.push_back(std::move(post));
}

const Post* Corpus::Find(std::string_view post_id) const {
  const auto it = index_.find(std::string(post_id));
  return it == index_.end() ? nullptr : &posts_[it->second];
}

}  // namespace adlabel::corpus
