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

#ifndef ADLABEL_AGREEMENT_LABEL_MATRIX_H_
#define ADLABEL_AGREEMENT_LABEL_MATRIX_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "adlabel/common/label.h"

namespace adlabel::agreement {

// One row of a label file: annotator_id,post_id,label.
struct LabelEntry {
  std::string annotator_id;
  std::string post_id;
  Label label = Label::kNonSponsored;

  bool operator==(const LabelEntry&) const = default;
};

// kParse on malformed rows (with line), kConflict on a repeated
// (annotator_id, post_id) pair.
std::vector<LabelEntry> ParseLabelFile(std::string_view contents);
std::string FormatLabelFile(std::span<const LabelEntry> entries);

// Annotators x items grid of optional labels.
class LabelMatrix {
 public:
  // kValidation on duplicate ids.
  LabelMatrix(std::vector<std::string> annotators,
              std::vector<std::string> items);

  // Annotators and items are taken from the entries in sorted order unless
  // `items` is given. kValidation when an entry names an item outside
  // `items`.
  static LabelMatrix FromEntries(
      std::span<const LabelEntry> entries,
      std::optional<std::vector<std::string>> items = std::nullopt);

  const std::vector<std::string>& annotators() const { return annotators_; }
  const std::vector<std::string>& items() const { return items_; }
  std::size_t annotator_count() const { return annotators_.size(); }
  std::size_t item_count() const { return items_.size(); }

  LabelCell at(std::size_t annotator, std::size_t item) const {
    return cells_[annotator * items_.size() + item];
  }
  void set(std::size_t annotator, std::size_t item, LabelCell cell) {
    cells_[annotator * items_.size() + item] = cell;
  }
  // kNotFound for unknown ids.
  void Set(std::string_view annotator_id, std::string_view post_id,
           LabelCell cell);

  std::optional<std::size_t> AnnotatorIndex(std::string_view id) const;
  std::optional<std::size_t> ItemIndex(std::string_view id) const;

  // Rows for `annotator_ids`, in the order given. kValidation for unknown
  // or repeated ids.
  LabelMatrix RestrictAnnotators(
      std::span<const std::string> annotator_ids) const;

 private:
  std::vector<std::string> annotators_;
  std::vector<std::string> items_;
  std::unordered_map<std::string, std::size_t> annotator_index_;
  std::unordered_map<std::string, std::size_t> item_index_;
  std::vector<LabelCell> cells_;
};

}  // namespace adlabel::agreement

#endif  // ADLABEL_AGREEMENT_LABEL_MATRIX_H_
