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

#ifndef ADLABEL_AGREEMENT_METRICS_H_
#define ADLABEL_AGREEMENT_METRICS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adlabel/agreement/label_matrix.h"

namespace adlabel::agreement {

// Metrics return fractions; reports convert to percent. Every metric throws
// kUndefinedMetric when its denominator is empty.

// Nominal Krippendorff's alpha with missing data, in [-1, 1]. 1.0 when
// neither observed nor expected disagreement exists.
double KrippendorffAlpha(const LabelMatrix& matrix);

// Share of items with at least two ratings whose ratings are all equal.
double AbsoluteAgreement(const LabelMatrix& matrix);

// Share of items with at least two ratings that become unanimous after
// removing at most one rating.
double AtMostOneDisagreement(const LabelMatrix& matrix);

// Pooled over (annotator, disclosed item) judgements: share labelled
// Sponsored. kValidation when an id is not an item of the matrix.
double DisclosedAccuracy(const LabelMatrix& matrix,
                         std::span<const std::string> disclosed_ids);

// Mean over annotators of each one's Sponsored rate; annotators without any
// label are left out. `pooled` instead divides all Sponsored labels by all
// labels.
double SponsoredProportion(const LabelMatrix& matrix, bool pooled = false);

struct PairRecord {
  std::string a;
  std::string b;
  std::size_t co_rated = 0;
  double abs_pct = 0.0;
  double alpha_pct = 0.0;
};

struct PairSummary {
  double min_abs = 0.0;
  double max_abs = 0.0;
  double std_abs = 0.0;
  double min_alpha = 0.0;
  double max_alpha = 0.0;
  double std_alpha = 0.0;
};

struct PairwiseStats {
  std::vector<PairRecord> pairs;
  // Pairs without any co-rated item.
  std::vector<std::pair<std::string, std::string>> skipped;
  // Empty when no pair could be evaluated.
  std::optional<PairSummary> summary;
};

// Sample standard deviation; 0 for fewer than two values.
double SampleStdDev(std::span<const double> values);

// kPrecondition with fewer than two annotators.
PairwiseStats PairwiseAgreement(const LabelMatrix& matrix);

struct BiasReport {
  double sponsored_pct = 0.0;
  double model_majority_agreement_pct = 0.0;
  std::size_t majority_items = 0;
  std::size_t tie_items_excluded = 0;
  std::size_t unrated_items_excluded = 0;
};

// Compares each item's strict-majority label with the model's label.
// kValidation when `predictions` misses an item; kUndefinedMetric when no
// item has a strict majority.
BiasReport ModelAgreementMajority(
    const LabelMatrix& matrix, const std::map<std::string, Label>& predictions);

// (new - base) / base * 100. kUndefinedMetric when base is 0.
double RelativeDiff(double base, double next);

}  // namespace adlabel::agreement

#endif  // ADLABEL_AGREEMENT_METRICS_H_
