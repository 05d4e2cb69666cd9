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

#include "adlabel/explainer/local_explain.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace adlabel::explainer {
namespace {

struct Contribution {
  std::string_view term;
  double value;
};

}  // namespace

Explanation LocalExplain(const detector::DetectorModel& model,
                         std::string_view post_id, std::string_view caption,
                         std::size_t k) {
  const detector::SparseVector x = model.vectorizer.Transform(caption);
  const double probability = model.classifier.Probability(x);
  const Label label =
      probability >= 0.5 ? Label::kSponsored : Label::kNonSponsored;
  const double toward = label == Label::kSponsored ? 1.0 : -1.0;

  std::vector<Contribution> contributions;
  const auto& weights = model.classifier.weights();
  for (std::size_t n = 0; n < x.nnz(); ++n) {
    const double value = weights[x.indices[n]] * x.values[n];
    if (value != 0.0) {
      contributions.push_back({model.vectorizer.terms()[x.indices[n]], value});
    }
  }
  std::sort(contributions.begin(), contributions.end(),
            [toward](const Contribution& a, const Contribution& b) {
              const double ma = std::abs(a.value);
              const double mb = std::abs(b.value);
              if (ma != mb) return ma > mb;
              if (a.value != b.value)
                return a.value * toward > b.value * toward;
              return a.term < b.term;
            });
  if (contributions.size() > k) contributions.resize(k);

  Explanation e;
  e.post_id = std::string(post_id);
  e.source = ExplanationSource::kLocalFallback;
  e.producer = model.model_id;
  e.implied_label = label == Label::kSponsored ? ImpliedLabel::kSponsored
                                               : ImpliedLabel::kNotSponsored;
  const std::string_view verdict =
      label == Label::kSponsored ? "sponsored" : "not sponsored";
  if (contributions.empty()) {
    e.rationale = fmt::format(
        "None of the caption's words or phrases are known to the {} model, "
        "so it falls back on its prior and leans {} (probability {:.2f}).",
        model.model_id, verdict, probability);
    return e;
  }
  std::string cues;
  for (const Contribution& c : contributions) {
    e.key_indicators.emplace_back(c.term);
    if (!cues.empty()) cues += ", ";
    cues += fmt::format("'{}' ({:+.2f})", c.term, c.value);
  }
  e.rationale = fmt::format(
      "The {} model leans {} (probability {:.2f}). Strongest cues, with "
      "positive values pointing to sponsored: {}.",
      model.model_id, verdict, probability, cues);
  return e;
}

}  // namespace adlabel::explainer
