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

#ifndef ADLABEL_DETECTOR_PREDICTIONS_H_
#define ADLABEL_DETECTOR_PREDICTIONS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adlabel/detector/evaluation.h"

namespace adlabel::detector {

// Delimited text with header post_id,label,probability,model_id. The
// probability column may be absent or blank. Unknown labels and
// out-of-range probabilities are kParse (with the row's line); a repeated
// (post_id, model_id) pair is kConflict.
std::vector<Prediction> ParsePredictions(std::string_view contents);

std::string FormatPredictions(std::span<const Prediction> predictions);

}  // namespace adlabel::detector

#endif  // ADLABEL_DETECTOR_PREDICTIONS_H_
