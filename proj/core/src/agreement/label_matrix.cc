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

#include "adlabel/agreement/label_matrix.h"

#include <algorithm>
#include <set>
#include <utility>

#include "adlabel/common/csv.h"
#include "adlabel/common/error.h"

namespace adlabel::agreement {

std::vector<LabelEntry> ParseLabelFile(std::string_view contents) {
  const csv::Table table = csv::Parse(contents);
  const std::size_t annotator_col = csv::ColumnIndex(table, "annotator_id");
  const std::size_t post_col = csv::ColumnIndex(table, "post_id");
  const std::size_t label_col = csv::ColumnIndex(table, "label");
  std::vector<LabelEntry> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const csv::Row& row = table.rows[r];
    const std::size_t line = table.line_numbers[r];
    LabelEntry entry;
    entry.annotator_id = row[annotator_col];
    entry.post_id = row[post_col];
    if (entry.annotator_id.empty() || entry.post_id.empty()) {
      throw Error(ErrorCode::kParse, "empty annotator_id or post_id", line);
    }
    try {
      entry.label = ParseLabel(row[label_col]);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, e.what(), line);
    }
    if (!seen.emplace(entry.annotator_id, entry.post_id).second) {
      throw Error(ErrorCode::kConflict,
                  fmt::format("second label from \"{}\" for \"{}\"",
                              entry.annotator_id, entry.post_id),
                  line);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::string FormatLabelFile(std::span<const LabelEntry> entries) {
  std::string out = csv::FormatRow({"annotator_id", "post_id", "label"});
  for (const LabelEntry& e : entries) {
    out += csv::FormatRow(
        {e.annotator_id, e.post_id, std::string(LabelName(e.label))});
  }
  return out;
}

LabelMatrix::LabelMatrix(std::vector<std::string> annotators,
                         std::vector<std::string> items)
    : annotators_(std::move(annotators)),
      items_(std::move(items)),
      cells_(annotators_.size() * items_.size()) {
  for (std::size_t i = 0; i < annotators_.size(); ++i) {
    if (!annotator_index_.emplace(annotators_[i], i).second) {
      Fail(ErrorCode::kValidation, "annotator \"{}\" listed twice",
           annotators_[i]);
    }
  }
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (!item_index_.emplace(items_[i], i).second) {
      Fail(ErrorCode::kValidation, "item \"{}\" listed twice", items_[i]);
    }
  }
}

LabelMatrix LabelMatrix::FromEntries(
    std::span<const LabelEntry> entries,
    std::optional<std::vector<std::string>> items) {
  std::set<std::string> annotators;
  std::set<std::string> seen_items;
  for (const LabelEntry& e : entries) {
    annotators.insert(e.annotator_id);
    seen_items.insert(e.post_id);
  }
  if (!items) items.emplace(seen_items.begin(), seen_items.end());
  LabelMatrix matrix({annotators.begin(), annotators.end()}, std::move(*items));
  for (const LabelEntry& e : entries) {
    const auto item = matrix.ItemIndex(e.post_id);
    if (!item) {
      Fail(ErrorCode::kValidation, "label for \"{}\" which is not in the batch",
           e.post_id);
    }
    matrix.set(*matrix.AnnotatorIndex(e.annotator_id), *item, e.label);
  }
  return matrix;
}

void LabelMatrix::Set(std::string_view annotator_id, std::string_view post_id,
                      LabelCell cell) {
  const auto a = AnnotatorIndex(annotator_id);
  if (!a) Fail(ErrorCode::kNotFound, "unknown annotator \"{}\"", annotator_id);
  const auto i = ItemIndex(post_id);
  if (!i) Fail(ErrorCode::kNotFound, "unknown item \"{}\"", post_id);
  set(*a, *i, cell);
}

std::optional<std::size_t> LabelMatrix::AnnotatorIndex(
    std::string_view id) const {
  const auto it = annotator_index_.find(std::string(id));
  if (it == annotator_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> LabelMatrix::ItemIndex(std::string_view id) const {
  const auto it = item_index_.find(std::string(id));
  if (it == item_index_.end()) return std::nullopt;
  return it->second;
}

LabelMatrix LabelMatrix::RestrictAnnotators(
    std::span<const std::string> annotator_ids) const {
  LabelMatrix out({annotator_ids.begin(), annotator_ids.end()}, items_);
  for (std::size_t r = 0; r < annotator_ids.size(); ++r) {
    const auto source = AnnotatorIndex(annotator_ids[r]);
    if (!source) {
      Fail(ErrorCode::kValidation, "unknown annotator \"{}\"",
           annotator_ids[r]);
    }
    for (std::size_t i = 0; i < items_.size(); ++i) {
      out.set(r, i, at(*source, i));
    }
  }
  return out;
}

}  // namespace adlabel::agreement
