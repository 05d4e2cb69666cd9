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

#include "adlabel/detector/vectorizer.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "adlabel/common/error.h"

namespace adlabel::detector {

double SparseVector::Dot(std::span<const double> dense) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    sum += values[k] * dense[indices[k]];
  }
  return sum;
}

double SparseVector::Norm() const {
  double sum = 0.0;
  for (const double v : values) sum += v * v;
  return std::sqrt(sum);
}

Vectorizer Vectorizer::Fit(std::span<const std::string> documents,
                           const VectorizerOptions& options) {
  if (documents.empty()) {
    Fail(ErrorCode::kPrecondition, "cannot fit a vectorizer on zero documents");
  }
  if (options.min_n < 1 || options.max_n < options.min_n) {
    Fail(ErrorCode::kValidation, "bad n-gram range [{}, {}]", options.min_n,
         options.max_n);
  }
  // std::map keeps the vocabulary in lexicographic order.
  std::map<std::string, std::size_t> document_frequency;
  for (const std::string& doc : documents) {
    std::vector<std::string> grams =
        NGrams(Tokenize(doc, options.tokenizer), options.min_n, options.max_n);
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    for (std::string& gram : grams) ++document_frequency[std::move(gram)];
  }

  const double n = static_cast<double>(documents.size());
  std::vector<std::string> terms;
  std::vector<double> idf;
  for (auto& [term, df] : document_frequency) {
    if (df < static_cast<std::size_t>(std::max(options.min_df, 1))) continue;
    terms.push_back(term);
    idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(df))) + 1.0);
  }
  return FromParts(options, std::move(terms), std::move(idf), documents.size());
}

Vectorizer Vectorizer::FromParts(VectorizerOptions options,
                                 std::vector<std::string> terms,
                                 std::vector<double> idf,
                                 std::size_t document_count) {
  if (terms.size() != idf.size()) {
    Fail(ErrorCode::kValidation, "vocabulary has {} terms but {} idf values",
         terms.size(), idf.size());
  }
  Vectorizer v;
  v.options_ = std::move(options);
  v.terms_ = std::move(terms);
  v.idf_ = std::move(idf);
  v.document_count_ = document_count;
  v.index_.reserve(v.terms_.size());
  for (std::size_t i = 0; i < v.terms_.size(); ++i) {
    if (!(v.idf_[i] >= 0.0) || !std::isfinite(v.idf_[i])) {
      Fail(ErrorCode::kValidation,
           "idf for \"{}\" is not a finite "
           "non-negative number",
           v.terms_[i]);
    }
    if (!v.index_.emplace(v.terms_[i], static_cast<std::uint32_t>(i)).second) {
      Fail(ErrorCode::kValidation, "duplicate vocabulary term \"{}\"",
           v.terms_[i]);
    }
  }
  return v;
}

SparseVector Vectorizer::Transform(std::string_view caption) const {
  std::map<std::uint32_t, double> counts;
  for (const std::string& gram : NGrams(Tokenize(caption, options_.tokenizer),
                                        options_.min_n, options_.max_n)) {
    if (const auto it = index_.find(gram); it != index_.end()) {
      counts[it->second] += 1.0;
    }
  }
  SparseVector x;
  x.indices.reserve(counts.size());
  x.values.reserve(counts.size());
  double norm_sq = 0.0;
  for (const auto& [index, count] : counts) {
    const double value = count * idf_[index];
    x.indices.push_back(index);
    x.values.push_back(value);
    norm_sq += value * value;
  }
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& v : x.values) v *= inv;
  }
  return x;
}

std::optional<std::uint32_t> Vectorizer::IndexOf(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace adlabel::detector
