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

#ifndef ADLABEL_EXPLAINER_EXPLAINER_H_
#define ADLABEL_EXPLAINER_EXPLAINER_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adlabel/corpus/weak_label.h"
#include "adlabel/detector/detector.h"
#include "adlabel/explainer/completion_client.h"
#include "adlabel/explainer/explanation.h"
#include "adlabel/explainer/recipe.h"

namespace adlabel::explainer {

struct ExplainOutcome {
  Explanation explanation;
  // Why the remote path was skipped or failed; empty for remote results.
  std::string fallback_reason;
};

// Remote first, local model second. Either dependency may be null.
class Explainer {
 public:
  Explainer(PromptRecipe recipe, CompletionClient* client,
            const detector::DetectorModel* local_model,
            std::size_t local_top_k = 5);

  // kUnavailable when the remote path fails and no local model is set.
  ExplainOutcome Explain(std::string_view post_id,
                         std::string_view stripped_caption);

  // Runs up to `workers` explanations concurrently; output follows input
  // order. The first unrecoverable error is rethrown after all workers stop.
  std::vector<ExplainOutcome> ExplainAll(
      std::span<const corpus::WeakLabeledPost> posts, std::size_t workers);

  const PromptRecipe& recipe() const { return recipe_; }
  const std::string& recipe_digest() const { return digest_; }

 private:
  PromptRecipe recipe_;
  std::string digest_;
  CompletionClient* client_;
  const detector::DetectorModel* local_model_;
  std::size_t local_top_k_;
};

}  // namespace adlabel::explainer

#endif  // ADLABEL_EXPLAINER_EXPLAINER_H_
