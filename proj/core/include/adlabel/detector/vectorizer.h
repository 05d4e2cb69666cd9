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

#ifndef ADLABEL_DETECTOR_VECTORIZER_H_
#define ADLABEL_DETECTOR_VECTORIZER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "adlabel/detector/tokenizer.h"

namespace adlabel::detector {

struct VectorizerOptions {
  int min_n = 1;
  int max_n = 3;
  // Terms seen in fewer training documents are dropped.
  int min_df = 2;
  TokenizerConfig tokenizer;
};

// Sorted by index, no duplicates.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;

  std::size_t nnz() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  double Dot(std::span<const double> dense) const;
  double Norm() const;
};

// TF-IDF over word n-grams: raw counts times smoothed idf
// ln((1 + N) / (1 + df)) + 1, then L2-normalized per document.
class Vectorizer {
 public:
  // Fits vocabulary and idf on the training captions. kPrecondition when
  // `documents` is empty.
  static Vectorizer Fit(std::span<const std::string> documents,
                        const VectorizerOptions& options = {});

  // Rebuilds a fitted vectorizer from stored parts. `terms` and `idf` must
  // have equal length; terms must be unique.
  static Vectorizer FromParts(VectorizerOptions options,
                              std::vector<std::string> terms,
                              std::vector<double> idf,
                              std::size_t document_count);

  // Out-of-vocabulary n-grams are ignored; a caption with none in
  // vocabulary yields the zero vector.
  SparseVector Transform(std::string_view caption) const;

  std::optional<std::uint32_t> IndexOf(std::string_view term) const;

  // Vocabulary in index order (lexicographic).
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<double>& idf() const { return idf_; }
  std::size_t size() const { return terms_.size(); }
  std::size_t document_count() const { return document_count_; }
  const VectorizerOptions& options() const { return options_; }

 private:
  VectorizerOptions options_;
  std::vector<std::string> terms_;
  std::vector<double> idf_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t document_count_ = 0;
};

}  // namespace adlabel::detector

#endif  // ADLABEL_DETECTOR_VECTORIZER_H_
