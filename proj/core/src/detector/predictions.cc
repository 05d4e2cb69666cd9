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

#include "adlabel/detector/predictions.h"

#include <charconv>
#include <set>
#include <utility>

#include "adlabel/common/csv.h"
#include "adlabel/common/error.h"
#include "adlabel/common/text.h"

namespace adlabel::detector {
namespace {

double ParseProbability(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail(ErrorCode::kParse, "bad probability \"{}\"", text);
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    Fail(ErrorCode::kParse, "probability {} outside [0, 1]", value);
  }
  return value;
}

}  // namespace

std::vector<Prediction> ParsePredictions(std::string_view contents) {
  const csv::Table table = csv::Parse(contents);
  const std::size_t id_col = csv::ColumnIndex(table, "post_id");
  const std::size_t label_col = csv::ColumnIndex(table, "label");
  const std::size_t model_col = csv::ColumnIndex(table, "model_id");
  std::optional<std::size_t> prob_col;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == "probability") prob_col = i;
  }

  std::vector<Prediction> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const csv::Row& row = table.rows[r];
    const std::size_t line = table.line_numbers[r];
    Prediction p;
    try {
      p.post_id = row[id_col];
      if (p.post_id.empty()) Fail(ErrorCode::kParse, "empty post_id");
      p.label = ParseLabel(row[label_col]);
      p.model_id = row[model_col];
      if (prob_col) {
        const std::string_view prob = text::TrimWhitespace(row[*prob_col]);
        if (!prob.empty()) p.probability = ParseProbability(prob);
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, e.what(), line);
    }
    if (!seen.emplace(p.post_id, p.model_id).second) {
      throw Error(ErrorCode::kConflict,
                  fmt::format("duplicate prediction for (\"{}\", \"{}\")",
                              p.post_id, p.model_id),
                  line);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::string FormatPredictions(std::span<const Prediction> predictions) {
  std::string out =
      csv::FormatRow({"post_id", "label", "probability", "model_id"});
  for (const Prediction& p : predictions) {
    out += csv::FormatRow(
        {p.post_id, std::string(LabelName(p.label)),
         p.probability ? fmt::format("{:.6f}", *p.probability) : std::string(),
         p.model_id});
  }
  return out;
}

}  // namespace adlabel::detector
