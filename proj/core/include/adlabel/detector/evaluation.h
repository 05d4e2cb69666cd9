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

#ifndef ADLABEL_DETECTOR_EVALUATION_H_
#define ADLABEL_DETECTOR_EVALUATION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "adlabel/common/label.h"

namespace adlabel::detector {

struct Prediction {
  std::string post_id;
  Label label = Label::kNonSponsored;
  // Internal models always set this; imported predictions may not.
  std::optional<double> probability;
  std::string model_id;
};

struct TruthItem {
  std::string post_id;
  bool sponsored = false;
  bool disclosed = false;
};

// Scores are percentages in [0, 100].
struct EvalReport {
  double pos_f1 = 0.0;
  double neg_f1 = 0.0;
  double macro_f1 = 0.0;
  // Share of sponsored-but-undisclosed truth items predicted Sponsored;
  // empty when the truth set has none.
  std::optional<double> undisclosed_acc;

  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::size_t true_negatives = 0;
  std::size_t undisclosed_total = 0;
};

// 100 * 2tp / (2tp + fp + fn); 0 when the class never occurs on either side.
double F1Percent(std::size_t tp, std::size_t fp, std::size_t fn);

// Simple mean of the per-class scores.
double MacroF1(double pos_f1, double neg_f1);

// Every truth id needs a prediction (kNotFound names the first missing id).
// Duplicate prediction ids are kConflict. Predictions without truth are
// ignored.
EvalReport Evaluate(std::span<const Prediction> predictions,
                    std::span<const TruthItem> truth);

}  // namespace adlabel::detector

#endif  // ADLABEL_DETECTOR_EVALUATION_H_
