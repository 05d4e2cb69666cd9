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

#ifndef ADLABEL_EXPLAINER_LOCAL_EXPLAIN_H_
#define ADLABEL_EXPLAINER_LOCAL_EXPLAIN_H_

#include <cstddef>
#include <string_view>

#include "adlabel/detector/detector.h"
#include "adlabel/explainer/explanation.h"

namespace adlabel::explainer {

// Per-feature contributions w_i * x_i of the caption's in-vocabulary n-grams.
// The top `k` by magnitude become the indicators; ties go to the feature
// pushing toward the predicted label, then to the smaller term.
Explanation LocalExplain(const detector::DetectorModel& model,
                         std::string_view post_id, std::string_view caption,
                         std::size_t k = 5);

}  // namespace adlabel::explainer

#endif  // ADLABEL_EXPLAINER_LOCAL_EXPLAIN_H_
