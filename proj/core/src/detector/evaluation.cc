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

#include "adlabel/detector/evaluation.h"

#include <unordered_map>

#include "adlabel/common/error.h"

namespace adlabel::detector {

double F1Percent(std::size_t tp, std::size_t fp, std::size_t fn) {
  const std::size_t denominator = 2 * tp + fp + fn;
  if (denominator == 0) return 0.0;
  return 100.0 * static_cast<double>(2 * tp) / static_cast<double>(denominator);
}

double MacroF1(double pos_f1, double neg_f1) { return (pos_f1 + neg_f1) / 2.0; }

EvalReport Evaluate(std::span<const Prediction> predictions,
                    std::span<const TruthItem> truth) {
  std::unordered_map<std::string_view, const Prediction*> by_id;
  for (const Prediction& p : predictions) {
    if (!by_id.emplace(p.post_id, &p).second) {
      Fail(ErrorCode::kConflict, "two predictions for post \"{}\"", p.post_id);
    }
  }

  EvalReport report;
  std::size_t undisclosed_hits = 0;
  for (const TruthItem& item : truth) {
    const auto it = by_id.find(item.post_id);
    if (it == by_id.end()) {
      Fail(ErrorCode::kNotFound, "no prediction for post \"{}\"", item.post_id);
    }
    const bool predicted = it->second->label == Label::kSponsored;
    if (predicted && item.sponsored) ++report.true_positives;
    if (predicted && !item.sponsored) ++report.false_positives;
    if (!predicted && item.sponsored) ++report.false_negatives;
    if (!predicted && !item.sponsored) ++report.true_negatives;
    if (item.sponsored && !item.disclosed) {
      ++report.undisclosed_total;
      undisclosed_hits += predicted;
    }
  }
  report.pos_f1 = F1Percent(report.true_positives, report.false_positives,
                            report.false_negatives);
  // For the negative class the roles of FP and FN swap.
  report.neg_f1 = F1Percent(report.true_negatives, report.false_negatives,
                            report.false_positives);
  report.macro_f1 = MacroF1(report.pos_f1, report.neg_f1);
  if (report.undisclosed_total > 0) {
    report.undisclosed_acc = 100.0 * static_cast<double>(undisclosed_hits) /
                             static_cast<double>(report.undisclosed_total);
  }
  return report;
}

}  // namespace adlabel::detector
