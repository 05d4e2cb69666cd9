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

#ifndef ADLABEL_CORPUS_WEAK_LABEL_H_
#define ADLABEL_CORPUS_WEAK_LABEL_H_

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "adlabel/common/label.h"
#include "adlabel/corpus/post.h"

namespace adlabel::corpus {

struct WeakLabeledPost {
  Post post;
  Label weak_label = Label::kNonSponsored;
  std::string stripped_caption;

  // Disclosure presence is what produced the weak label.
  bool disclosed() const { return weak_label == Label::kSponsored; }
};

// Disclosed posts become Sponsored with disclosures stripped; all others are
// NonSponsored with the caption unchanged.
WeakLabeledPost WeakLabel(const Post& post);
std::vector<WeakLabeledPost> WeakLabel(const Corpus& corpus);

// Ingestion record plus "weak_label" and "stripped_caption".
std::string WeakLabeledToRecord(const WeakLabeledPost& post);

// Reads records written by WeakLabeledToRecord. Throws kParse with the line
// number, or kConflict on a repeated id.
std::vector<WeakLabeledPost> ReadWeakLabeled(std::istream& in);
std::vector<WeakLabeledPost> ReadWeakLabeled(std::string_view contents);

}  // namespace adlabel::corpus

#endif  // ADLABEL_CORPUS_WEAK_LABEL_H_
