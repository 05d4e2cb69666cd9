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

#include "adlabel/agreement/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "adlabel/common/error.h"

namespace adlabel::agreement {
namespace {

struct ItemCounts {
  std::size_t sponsored = 0;
  std::size_t non_sponsored = 0;

  std::size_t total() const { return sponsored + non_sponsored; }
};

ItemCounts CountItem(const LabelMatrix& matrix, std::size_t item) {
  ItemCounts counts;
  for (std::size_t a = 0; a < matrix.annotator_count(); ++a) {
    const LabelCell cell = matrix.at(a, item);
    if (!cell) continue;
    if (*cell == Label::kSponsored) {
      ++counts.sponsored;
    } else {
      ++counts.non_sponsored;
    }
  }
  return counts;
}

}  // namespace

double KrippendorffAlpha(const LabelMatrix& matrix) {
  // With two categories the coincidence matrix reduces to three sums.
  double disagreement = 0.0;  // o_SN + o_NS
  double n_sponsored = 0.0;
  double n_non_sponsored = 0.0;
  for (std::size_t i = 0; i < matrix.item_count(); ++i) {
    const ItemCounts c = CountItem(matrix, i);
    const std::size_t m = c.total();
    if (m < 2) continue;
    disagreement += 2.0 * static_cast<double>(c.sponsored) *
                    static_cast<double>(c.non_sponsored) /
                    static_cast<double>(m - 1);
    n_sponsored += static_cast<double>(c.sponsored);
    n_non_sponsored += static_cast<double>(c.non_sponsored);
  }
  const double n = n_sponsored + n_non_sponsored;
  if (n == 0.0) {
    Fail(ErrorCode::kUndefinedMetric,
         "alpha needs an item rated by at least two annotators");
  }
  const double observed = disagreement / n;
  const double expected = 2.0 * n_sponsored * n_non_sponsored / (n * (n - 1));
  if (expected == 0.0) return 1.0;
  return 1.0 - observed / expected;
}

double AbsoluteAgreement(const LabelMatrix& matrix) {
  std::size_t eligible = 0;
  std::size_t unanimous = 0;
  for (std::size_t i = 0; i < matrix.item_count(); ++i) {
    const ItemCounts c = CountItem(matrix, i);
    if (c.total() < 2) continue;
    ++eligible;
    unanimous += c.sponsored == 0 || c.non_sponsored == 0;
  }
  if (eligible == 0) {
    Fail(ErrorCode::kUndefinedMetric,
         "absolute agreement needs an item rated by at least two annotators");
  }
  return static_cast<double>(unanimous) / static_cast<double>(eligible);
}

double AtMostOneDisagreement(const LabelMatrix& matrix) {
  std::size_t eligible = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < matrix.item_count(); ++i) {
    const ItemCounts c = CountItem(matrix, i);
    if (c.total() < 2) continue;
    ++eligible;
    hits += std::min(c.sponsored, c.non_sponsored) <= 1;
  }
  if (eligible == 0) {
    Fail(ErrorCode::kUndefinedMetric,
         "1-Disag needs an item rated by at least two annotators");
  }
  return static_cast<double>(hits) / static_cast<double>(eligible);
}

double DisclosedAccuracy(const LabelMatrix& matrix,
                         std::span<const std::string> disclosed_ids) {
  std::size_t judgements = 0;
  std::size_t sponsored = 0;
  std::unordered_set<std::size_t> seen;
  for (const std::string& id : disclosed_ids) {
    const auto item = matrix.ItemIndex(id);
    if (!item) {
      Fail(ErrorCode::kValidation, "disclosed post \"{}\" is not an item", id);
    }
    if (!seen.insert(*item).second) continue;
    const ItemCounts c = CountItem(matrix, *item);
    judgements += c.total();
    sponsored += c.sponsored;
  }
  if (judgements == 0) {
    Fail(ErrorCode::kUndefinedMetric, "no judgements on disclosed posts");
  }
  return static_cast<double>(sponsored) / static_cast<double>(judgements);
}

double SponsoredProportion(const LabelMatrix& matrix, bool pooled) {
  std::size_t all_labels = 0;
  std::size_t all_sponsored = 0;
  double rate_sum = 0.0;
  std::size_t raters = 0;
  for (std::size_t a = 0; a < matrix.annotator_count(); ++a) {
    std::size_t labels = 0;
    std::size_t sponsored = 0;
    for (std::size_t i = 0; i < matrix.item_count(); ++i) {
      const LabelCell cell = matrix.at(a, i);
      if (!cell) continue;
      ++labels;
      sponsored += *cell == Label::kSponsored;
    }
    if (labels == 0) continue;
    all_labels += labels;
    all_sponsored += sponsored;
    rate_sum += static_cast<double>(sponsored) / static_cast<double>(labels);
    ++raters;
  }
  if (raters == 0) {
    Fail(ErrorCode::kUndefinedMetric, "the matrix holds no labels");
  }
  if (pooled) {
    return static_cast<double>(all_sponsored) / static_cast<double>(all_labels);
  }
  return rate_sum / static_cast<double>(raters);
}

double SampleStdDev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                      static_cast<double>(values.size());
  double sum_sq = 0.0;
  for (const double v : values) sum_sq += (v - mean) * (v - mean);
  return std::sqrt(sum_sq / static_cast<double>(values.size() - 1));
}

PairwiseStats PairwiseAgreement(const LabelMatrix& matrix) {
  if (matrix.annotator_count() < 2) {
    Fail(ErrorCode::kPrecondition, "pairwise agreement needs two annotators");
  }
  PairwiseStats stats;
  for (std::size_t a = 0; a < matrix.annotator_count(); ++a) {
    for (std::size_t b = a + 1; b < matrix.annotator_count(); ++b) {
      const std::string ids[] = {matrix.annotators()[a],
                                 matrix.annotators()[b]};
      const LabelMatrix pair = matrix.RestrictAnnotators(ids);
      std::size_t co_rated = 0;
      for (std::size_t i = 0; i < pair.item_count(); ++i) {
        co_rated += pair.at(0, i).has_value() && pair.at(1, i).has_value();
      }
      if (co_rated == 0) {
        stats.skipped.emplace_back(ids[0], ids[1]);
        continue;
      }
      stats.pairs.push_back({ids[0], ids[1], co_rated,
                             100.0 * AbsoluteAgreement(pair),
                             100.0 * KrippendorffAlpha(pair)});
    }
  }
  if (!stats.pairs.empty()) {
    std::vector<double> abs;
    std::vector<double> alpha;
    for (const PairRecord& p : stats.pairs) {
      abs.push_back(p.abs_pct);
      alpha.push_back(p.alpha_pct);
    }
    PairSummary s;
    s.min_abs = *std::min_element(abs.begin(), abs.end());
    s.max_abs = *std::max_element(abs.begin(), abs.end());
    s.std_abs = SampleStdDev(abs);
    s.min_alpha = *std::min_element(alpha.begin(), alpha.end());
    s.max_alpha = *std::max_element(alpha.begin(), alpha.end());
    s.std_alpha = SampleStdDev(alpha);
    stats.summary = s;
  }
  return stats;
}

BiasReport ModelAgreementMajority(
    const LabelMatrix& matrix,
    const std::map<std::string, Label>& predictions) {
  BiasReport report;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < matrix.item_count(); ++i) {
    const auto prediction = predictions.find(matrix.items()[i]);
    if (prediction == predictions.end()) {
      Fail(ErrorCode::kValidation, "no model prediction for \"{}\"",
           matrix.items()[i]);
    }
    const ItemCounts c = CountItem(matrix, i);
    if (c.total() == 0) {
      ++report.unrated_items_excluded;
      continue;
    }
    if (c.sponsored == c.non_sponsored) {
      ++report.tie_items_excluded;
      continue;
    }
    const Label majority = c.sponsored > c.non_sponsored ? Label::kSponsored
                                                         : Label::kNonSponsored;
    ++report.majority_items;
    agree += majority == prediction->second;
  }
  if (report.majority_items == 0) {
    Fail(ErrorCode::kUndefinedMetric, "no item has a strict majority label");
  }
  report.model_majority_agreement_pct =
      100.0 * static_cast<double>(agree) /
      static_cast<double>(report.majority_items);
  report.sponsored_pct = 100.0 * SponsoredProportion(matrix);
  return report;
}

double RelativeDiff(double base, double next) {
  if (base == 0.0) {
    Fail(ErrorCode::kUndefinedMetric, "relative difference from a zero base");
  }
  return (next - base) / base * 100.0;
}

}  // namespace adlabel::agreement
