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

#ifndef ADLABEL_CORPUS_SAMPLING_H_
#define ADLABEL_CORPUS_SAMPLING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adlabel/corpus/post.h"
#include "adlabel/corpus/weak_label.h"

namespace adlabel::corpus {

// Keeps all n Sponsored posts and min(2n, available) NonSponsored posts drawn
// uniformly without replacement. Output preserves input order.
std::vector<WeakLabeledPost> Undersample(
    std::span<const WeakLabeledPost> labeled, std::uint64_t seed);

struct SplitSpec {
  int cutoff_year = 2022;
  // Share of pre-cutoff posts assigned to training, floor-rounded.
  int train_percent = 90;
  std::uint64_t seed = 0;
};

struct DatasetSplit {
  SplitSpec spec;
  std::vector<WeakLabeledPost> train;
  std::vector<WeakLabeledPost> validation;
  // Exactly the posts published in the cutoff year, in input order.
  std::vector<WeakLabeledPost> test;
  // Posts published after the cutoff year belong to no part.
  std::vector<WeakLabeledPost> excluded;
};

// Pre-cutoff posts are shuffled with the seed and cut into a
// floor(train_percent%) training prefix and a validation remainder.
// kPrecondition when no post predates the cutoff year.
DatasetSplit TemporalSplit(std::span<const WeakLabeledPost> balanced,
                           const SplitSpec& spec);

struct BatchOptions {
  std::size_t size = 200;
  double disclosed_share = 0.15;
  std::uint64_t seed = 0;
  // Empty means "batch-<seed>".
  std::string batch_id;
};

struct AnnotationBatch {
  std::string batch_id;
  std::size_t size = 0;
  double disclosed_share = 0.0;
  std::uint64_t seed = 0;
  // Presentation order, shuffled.
  std::vector<std::string> items;
  // Subset of `items` that carry a disclosure, in `items` order.
  std::vector<std::string> disclosed_items;
};

// round(size * share) disclosed posts plus the remainder undisclosed, each
// drawn uniformly without replacement, then shuffled together. kCapacity
// naming the deficit when either pool is too small.
AnnotationBatch BuildAnnotationBatch(std::span<const Post> posts,
                                     const BatchOptions& options);

}  // namespace adlabel::corpus

#endif  // ADLABEL_CORPUS_SAMPLING_H_
