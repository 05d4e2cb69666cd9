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

#ifndef ADLABEL_EXPLAINER_RECIPE_H_
#define ADLABEL_EXPLAINER_RECIPE_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace adlabel::explainer {

struct FewShotExample {
  std::string caption;
  // Full ideal response: indicators line, rationale, label line.
  std::string explanation;

  bool operator==(const FewShotExample&) const = default;
};

struct PromptRecipe {
  std::string name;
  std::string system_instructions;
  std::vector<FewShotExample> few_shot_examples;
  // Each entry must map onto the label grammar (see explanation.h).
  std::vector<std::string> label_phrasings;
  std::string positive_bias_clause;

  bool operator==(const PromptRecipe&) const = default;
};

// The built-in recipe. recipes/default_recipe.json holds the same content.
const PromptRecipe& DefaultRecipe();

// kParse on malformed JSON, kValidation on unusable content.
PromptRecipe ParseRecipe(std::string_view json);
PromptRecipe LoadRecipe(const std::filesystem::path& path);

// Canonical JSON: sorted keys, no insignificant whitespace.
std::string SerializeRecipe(const PromptRecipe& recipe);
std::string PrettyRecipe(const PromptRecipe& recipe);

// SHA-256 of the canonical serialization.
std::string RecipeDigest(const PromptRecipe& recipe);

// System instructions, the example block (omitted when there are no
// examples), the bias clause, then the target caption. Disclosure hashtags
// are stripped from the caption again so none can leak into the prompt.
std::string BuildPrompt(std::string_view caption, const PromptRecipe& recipe);

}  // namespace adlabel::explainer

#endif  // ADLABEL_EXPLAINER_RECIPE_H_
