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

#ifndef ADLABEL_CORPUS_CORPUS_IO_H_
#define ADLABEL_CORPUS_CORPUS_IO_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adlabel/corpus/sampling.h"
#include "adlabel/corpus/weak_label.h"

namespace adlabel::corpus {

// An id-list file: "# key=value" metadata lines followed by one id per line.
struct IdList {
  std::map<std::string, std::string> metadata;
  std::vector<std::string> ids;
};

std::string FormatIdList(const IdList& list);
IdList ParseIdList(std::string_view contents);
IdList ReadIdList(const std::filesystem::path& path);

// Writes train.ids, validation.ids, test.ids (and excluded.ids when
// non-empty) under `dir`. Each carries seed, cutoff_year, train_percent,
// prng and part in its header.
void WriteSplitManifests(const DatasetSplit& split,
                         const std::filesystem::path& dir);

// What the annotation service serves: the batch plus the caption shown for
// each item and an optional display-ready explanation.
struct BatchItem {
  std::string post_id;
  std::string caption;
  bool disclosed = false;
  std::optional<std::string> explanation;
};

struct BatchDocument {
  std::string batch_id;
  std::uint64_t seed = 0;
  double disclosed_share = 0.0;
  std::vector<BatchItem> items;
};

// Joins batch ids with their posts. kNotFound if an id has no post.
BatchDocument MakeBatchDocument(
    const AnnotationBatch& batch, std::span<const WeakLabeledPost> posts,
    const std::map<std::string, std::string>& explanations);

std::string BatchDocumentToJson(const BatchDocument& doc);
// Throws kParse.
BatchDocument ParseBatchDocument(std::string_view json);

}  // namespace adlabel::corpus

#endif  // ADLABEL_CORPUS_CORPUS_IO_H_
