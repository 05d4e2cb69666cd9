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

#include "support/synthetic.h"

#include <fmt/format.h>

#include <array>
#include <chrono>
#include <string_view>

#include "adlabel/common/rng.h"

namespace adlabel::testing {
namespace {

constexpr std::array<std::string_view, 24> kNeutralWords = {
    "sunset", "coffee",  "morning", "beach",  "family", "weekend",
    "love",   "friends", "city",    "walk",   "dinner", "happy",
    "travel", "mood",    "garden",  "music",  "rain",   "smile",
    "home",   "book",    "dog",     "sunday", "lake",   "vibes"};

constexpr std::array<std::string_view, 12> kPromoWords = {
    "discount", "code",     "link",   "shop",      "partner", "collab",
    "promo",    "giveaway", "@brand", "@shop.ltk", "swipe",   "offer"};

constexpr std::array<std::string_view, 10> kDisclosureVariants = {
    "#ad",
    "#AD",
    "#Ad",
    "#sponsored",
    "#Sponsored",
    "#SPONSORED",
    "#spons",
    "#advertisement",
    "#Advertisement",
    "#ad."};

constexpr std::array<std::string_view, 6> kLookAlikes = {
    "#adventure",   "#ad_free", "#adidas",
    "#sponsorship", "#advert",  "#adorable"};

std::string_view Pick(StableRng& rng, std::span<const std::string_view> words) {
  return words[rng.UniformBelow(words.size())];
}

}  // namespace

corpus::Post MakePost(std::string id, std::string caption, int year,
                      std::int64_t followers) {
  using namespace std::chrono;
  corpus::Post post;
  post.post_id = std::move(id);
  post.influencer_id = "inf-1";
  post.caption = std::move(caption);
  post.published_at =
      sys_days{year_month_day{std::chrono::year{year}, month{6}, day{15}}} +
      hours{12};
  post.followers = followers;
  post.follower_tier = corpus::TierForFollowers(followers);
  return post;
}

corpus::Corpus MakeSyntheticCorpus(const SyntheticCorpusOptions& options) {
  using namespace std::chrono;
  StableRng rng(options.seed);
  corpus::Corpus corpus;
  const int years = options.last_year - options.first_year + 1;
  for (std::size_t i = 0; i < options.posts; ++i) {
    const bool disclosed = rng.UniformUnit() < options.disclosed_rate;
    const bool promo =
        disclosed || rng.UniformUnit() < options.undisclosed_ad_rate;

    std::vector<std::string> words;
    const std::size_t length = 4 + rng.UniformBelow(8);
    for (std::size_t w = 0; w < length; ++w) {
      words.emplace_back(Pick(rng, kNeutralWords));
    }
    if (promo) {
      const std::size_t promo_count = 2 + rng.UniformBelow(3);
      for (std::size_t w = 0; w < promo_count; ++w) {
        words.insert(words.begin() + rng.UniformBelow(words.size() + 1),
                     std::string(Pick(rng, kPromoWords)));
      }
    }
    if (rng.UniformUnit() < 0.3) {
      words.insert(words.begin() + rng.UniformBelow(words.size() + 1),
                   std::string(Pick(rng, kLookAlikes)));
    }
    if (disclosed) {
      const std::size_t tags = 1 + rng.UniformBelow(2);
      for (std::size_t t = 0; t < tags; ++t) {
        words.insert(words.begin() + rng.UniformBelow(words.size() + 1),
                     std::string(Pick(rng, kDisclosureVariants)));
      }
      if (rng.UniformUnit() < 0.05) words.emplace_back("#ad#sponsored");
    }

    std::string caption;
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (w > 0) caption += rng.UniformUnit() < 0.1 ? "  " : " ";
      caption += words[w];
    }
    if (rng.UniformUnit() < 0.2) caption += "!";

    corpus::Post post;
    post.post_id = fmt::format("p{:06d}", i + 1);
    post.influencer_id = fmt::format("inf-{:03d}", rng.UniformBelow(100));
    post.caption = std::move(caption);
    const int year =
        options.first_year + static_cast<int>(rng.UniformBelow(years));
    const auto day_of_year = days{static_cast<int>(rng.UniformBelow(365))};
    post.published_at =
        sys_days{year_month_day{std::chrono::year{year}, January, day{1}}} +
        day_of_year + seconds{rng.UniformBelow(86400)};
    post.followers =
        rng.UniformUnit() < 0.66
            ? 600'000 + static_cast<std::int64_t>(rng.UniformBelow(5'000'000))
            : 100'000 + static_cast<std::int64_t>(rng.UniformBelow(500'000));
    post.follower_tier = corpus::TierForFollowers(post.followers);
    corpus.Add(std::move(post));
  }
  return corpus;
}

}  // namespace adlabel::testing
