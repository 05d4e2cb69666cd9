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

#include "adlabel/corpus/sampling.h"

#include <algorithm>
#include <cmath>

#include "adlabel/common/error.h"
#include "adlabel/common/rng.h"
#include "adlabel/corpus/disclosure.h"

namespace adlabel::corpus {

std::vector<WeakLabeledPost> Undersample(
    std::span<const WeakLabeledPost> labeled, std::uint64_t seed) {
  std::vector<std::size_t> negatives;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    if (labeled[i].weak_label == Label::kSponsored) {
      ++positives;
    } else {
      negatives.push_back(i);
    }
  }

  StableRng rng(seed);
  std::vector<bool> keep(labeled.size(), false);
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    keep[i] = labeled[i].weak_label == Label::kSponsored;
  }
  for (const std::size_t pick :
       rng.SampleIndices(negatives.size(), 2 * positives)) {
    keep[negatives[pick]] = true;
  }

  std::vector<WeakLabeledPost> out;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    if (keep[i]) out.push_back(labeled[i]);
  }
  return out;
}

DatasetSplit TemporalSplit(std::span<const WeakLabeledPost> balanced,
                           const SplitSpec& spec) {
  if (spec.train_percent < 0 || spec.train_percent > 100) {
    Fail(ErrorCode::kValidation, "train_percent must be in [0, 100], got {}",
         spec.train_percent);
  }
  DatasetSplit split;
  split.spec = spec;
  std::vector<WeakLabeledPost> before;
  for (const WeakLabeledPost& post : balanced) {
    const int year = PublishedYear(post.post);
    if (year < spec.cutoff_year) {
      before.push_back(post);
    } else if (year == spec.cutoff_year) {
      split.test.push_back(post);
    } else {
      split.excluded.push_back(post);
    }
  }
  if (before.empty()) {
    Fail(ErrorCode::kPrecondition,
         "no posts published before {}; the training split would be empty",
         spec.cutoff_year);
  }

  StableRng rng(spec.seed);
  rng.Shuffle(before);
  const std::size_t train_size =
      before.size() * static_cast<std::size_t>(spec.train_percent) / 100;
  split.train.assign(std::make_move_iterator(before.begin()),
                     std::make_move_iterator(before.begin() + train_size));
  split.validation.assign(std::make_move_iterator(before.begin() + train_size),
                          std::make_move_iterator(before.end()));
  return split;
}

AnnotationBatch BuildAnnotationBatch(std::span<const Post> posts,
                                     const BatchOptions& options) {
  if (!(options.disclosed_share >= 0.0 && options.disclosed_share <= 1.0)) {
    Fail(ErrorCode::kValidation, "disclosed_share must be in [0, 1], got {}",
         options.disclosed_share);
  }
  const auto want_disclosed = static_cast<std::size_t>(std::llround(
      static_cast<double>(options.size) * options.disclosed_share));
  const std::size_t want_undisclosed = options.size - want_disclosed;

  std::vector<const Post*> disclosed;
  std::vector<const Post*> undisclosed;
  for (const Post& post : posts) {
    (ScanCaption(post.caption).disclosed ? disclosed : undisclosed)
        .push_back(&post);
  }
  if (disclosed.size() < want_disclosed ||
      undisclosed.size() < want_undisclosed) {
    std::string deficit;
    if (disclosed.size() < want_disclosed) {
      deficit += fmt::format("{} disclosed posts short (need {}, have {})",
                             want_disclosed - disclosed.size(), want_disclosed,
                             disclosed.size());
    }
    if (undisclosed.size() < want_undisclosed) {
      if (!deficit.empty()) deficit += "; ";
      deficit += fmt::format("{} undisclosed posts short (need {}, have {})",
                             want_undisclosed - undisclosed.size(),
                             want_undisclosed, undisclosed.size());
    }
    Fail(ErrorCode::kCapacity, "cannot build a batch of {}: {}", options.size,
         deficit);
  }

  StableRng rng(options.seed);
  std::vector<const Post*> chosen;
  chosen.reserve(options.size);
  for (const std::size_t i :
       rng.SampleIndices(disclosed.size(), want_disclosed)) {
    chosen.push_back(disclosed[i]);
  }
  for (const std::size_t i :
       rng.SampleIndices(undisclosed.size(), want_undisclosed)) {
    chosen.push_back(undisclosed[i]);
  }
  rng.Shuffle(chosen);

  AnnotationBatch batch;
  batch.batch_id = options.batch_id.empty()
                       ? fmt::format("batch-{}", options.seed)
                       : options.batch_id;
  batch.size = options.size;
  batch.disclosed_share = options.disclosed_share;
  batch.seed = options.seed;
  for (const Post* post : chosen) {
    batch.items.push_back(post->post_id);
    if (ScanCaption(post->caption).disclosed) {
      batch.disclosed_items.push_back(post->post_id);
    }
  }
  return batch;
}

}  // namespace adlabel::corpus
