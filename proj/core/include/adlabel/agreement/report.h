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

#ifndef ADLABEL_AGREEMENT_REPORT_H_
#define ADLABEL_AGREEMENT_REPORT_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adlabel/agreement/label_matrix.h"
#include "adlabel/agreement/metrics.h"

namespace adlabel::agreement {

struct GroupSpec {
  std::string group_id;
  std::vector<std::string> annotators;
};

struct ComparisonSpec {
  std::string base_group;
  std::string new_group;
};

// Everything besides the labels needed to rebuild a report: which items
// the batch holds, which are disclosed, and how annotators are grouped.
struct ReportManifest {
  std::string batch_id;
  std::vector<std::string> items;
  std::vector<std::string> disclosed_ids;
  std::vector<GroupSpec> groups;
  std::vector<ComparisonSpec> comparisons;
};

std::string ManifestToJson(const ReportManifest& manifest);
// kParse on malformed input.
ReportManifest ParseManifest(std::string_view json);

// Percentages; empty when the metric is undefined for the group.
struct AgreementReport {
  std::string group_id;
  std::size_t annotator_count = 0;
  std::optional<double> alpha_pct;
  std::optional<double> abs_pct;
  std::optional<double> one_disag_pct;
  std::optional<double> disclosed_acc_pct;
  std::optional<double> sponsored_pct;
  std::optional<double> sponsored_pooled_pct;
  std::optional<PairwiseStats> pairwise;
  std::optional<BiasReport> bias;
  // Why metrics are missing.
  std::vector<std::string> notes;
};

struct MetricDiff {
  std::string metric;
  std::optional<double> base;
  std::optional<double> next;
  std::optional<double> absolute_diff;
  std::optional<double> relative_diff;
};

struct ComparisonReport {
  std::string base_group;
  std::string new_group;
  std::vector<MetricDiff> diffs;
};

struct FullReport {
  std::vector<AgreementReport> groups;
  std::vector<ComparisonReport> comparisons;
};

// One report per group in manifest order, each computed on the matrix
// restricted to the group's annotators. kValidation when a group names an
// unknown annotator or a comparison names an unknown group.
FullReport BuildReport(const LabelMatrix& matrix,
                       std::span<const std::string> disclosed_ids,
                       std::span<const GroupSpec> groups,
                       std::span<const ComparisonSpec> comparisons,
                       const std::map<std::string, Label>* predictions);

// Labels file + manifest (+ optional predictions file) to report.
FullReport ReplayReport(std::string_view labels_csv,
                        const ReportManifest& manifest,
                        std::optional<std::string_view> predictions_csv);

std::string ReportToJson(const FullReport& report);
// Aligned tables: agreement, pairwise, subgroup sizes, model bias.
std::string ReportToText(const FullReport& report);

}  // namespace adlabel::agreement

#endif  // ADLABEL_AGREEMENT_REPORT_H_
