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

#include "adlabel/explainer/recipe.h"

#include "adlabel/common/digest.h"
#include "adlabel/common/error.h"
#include "adlabel/common/file_util.h"
#include "adlabel/corpus/disclosure.h"
#include "adlabel/explainer/explanation.h"
#include "json.hpp"

namespace adlabel::explainer {
namespace {

using nlohmann::json;

PromptRecipe MakeDefaultRecipe() {
  PromptRecipe r;
  r.name = "default";
  r.system_instructions =
      "You review Instagram captions for undisclosed advertising. A post is "
      "sponsored when the influencer promotes products or services, directly "
      "or indirectly, in return for any benefit such as payment, free "
      "products or affiliate commission. Posts promoting the influencer's own "
      "content (a channel, a podcast) are not sponsored; posts selling their "
      "own merchandise are.\n"
      "First list the words or phrases that matter most, on one line that "
      "starts with \"Key indicators:\" and quotes each phrase in single "
      "quotes (write \"Key indicators: none.\" if nothing stands out). Then "
      "explain your reasoning in two or three sentences. Only after the "
      "explanation, give the label on the last line using exactly one of: "
      "Sponsored, Likely sponsored, Likely not sponsored, Not sponsored.";
  r.few_shot_examples = {
      {"Obsessed with this new serum from @glowlab, use my code MAYA15 for "
       "15% off! Link in bio",
       "Key indicators: '@glowlab', 'use my code', 'Link in bio'.\n"
       "The caption tags a skincare brand and shares a personal discount "
       "code, which is typical of a paid or affiliate partnership.\n"
       "Sponsored"},
      {"Sunday hike with the pup, legs are done",
       "Key indicators: none.\n"
       "The caption describes a personal activity and mentions no brand, "
       "product or offer.\n"
       "Not sponsored"},
      {"Finally tried the new menu at @cafebloom, loved the oat latte",
       "Key indicators: '@cafebloom', 'new menu'.\n"
       "A business is tagged and its product is praised, but there is no "
       "code, link or explicit partnership, so the post may be a gifted "
       "visit or a genuine recommendation.\n"
       "Likely sponsored"},
      {"New episode of my podcast is out now, link in bio",
       "Key indicators: 'podcast', 'link in bio'.\n"
       "The link promotes the influencer's own content rather than a third "
       "party product.\n"
       "Likely not sponsored"},
  };
  r.label_phrasings = {"Sponsored", "Likely sponsored", "Likely not sponsored",
                       "Not sponsored"};
  r.positive_bias_clause =
      "When you are uncertain, prefer \"Likely sponsored\" over \"Likely not "
      "sponsored\": missing an undisclosed ad is worse than flagging an "
      "organic post.";
  return r;
}

json ToJson(const PromptRecipe& recipe) {
  json examples = json::array();
  for (const FewShotExample& e : recipe.few_shot_examples) {
    examples.push_back(
        {{"caption", e.caption}, {"explanation", e.explanation}});
  }
  return {{"name", recipe.name},
          {"system_instructions", recipe.system_instructions},
          {"few_shot_examples", examples},
          {"label_phrasings", recipe.label_phrasings},
          {"positive_bias_clause", recipe.positive_bias_clause}};
}

void Validate(const PromptRecipe& recipe) {
  if (recipe.system_instructions.empty()) {
    Fail(ErrorCode::kValidation, "recipe has no system instructions");
  }
  if (recipe.label_phrasings.empty()) {
    Fail(ErrorCode::kValidation, "recipe has no label phrasings");
  }
  for (const std::string& phrase : recipe.label_phrasings) {
    if (!MatchLabelPhrase(phrase)) {
      Fail(ErrorCode::kValidation,
           "label phrasing \"{}\" does not map onto the label grammar", phrase);
    }
  }
  for (std::size_t i = 0; i < recipe.few_shot_examples.size(); ++i) {
    const FewShotExample& e = recipe.few_shot_examples[i];
    if (e.caption.empty()) {
      Fail(ErrorCode::kValidation, "few-shot example {} has no caption", i + 1);
    }
    try {
      ParseExplanation(e.explanation, "example");
    } catch (const Error& err) {
      Fail(ErrorCode::kValidation, "few-shot example {}: {}", i + 1,
           err.what());
    }
  }
}

}  // namespace

const PromptRecipe& DefaultRecipe() {
  static const PromptRecipe* const recipe =
      new PromptRecipe(MakeDefaultRecipe());
  return *recipe;
}

PromptRecipe ParseRecipe(std::string_view text) {
  const json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object()) {
    Fail(ErrorCode::kParse, "recipe is not a JSON object");
  }
  PromptRecipe recipe;
  try {
    recipe.name = root.value("name", std::string("unnamed"));
    recipe.system_instructions =
        root.at("system_instructions").get<std::string>();
    for (const json& e : root.value("few_shot_examples", json::array())) {
      recipe.few_shot_examples.push_back(
          {e.at("caption").get<std::string>(),
           e.at("explanation").get<std::string>()});
    }
    recipe.label_phrasings =
        root.at("label_phrasings").get<std::vector<std::string>>();
    recipe.positive_bias_clause =
        root.value("positive_bias_clause", std::string());
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, "malformed recipe: {}", e.what());
  }
  Validate(recipe);
  return recipe;
}

PromptRecipe LoadRecipe(const std::filesystem::path& path) {
  return ParseRecipe(ReadFile(path));
}

std::string SerializeRecipe(const PromptRecipe& recipe) {
  return ToJson(recipe).dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string PrettyRecipe(const PromptRecipe& recipe) {
  return ToJson(recipe).dump(2, ' ', false, json::error_handler_t::replace) +
         "\n";
}

std::string RecipeDigest(const PromptRecipe& recipe) {
  return Sha256Hex(SerializeRecipe(recipe));
}

std::string BuildPrompt(std::string_view caption, const PromptRecipe& recipe) {
  std::string prompt = recipe.system_instructions;
  prompt += "\n\n";
  if (!recipe.few_shot_examples.empty()) {
    prompt += "Examples:\n\n";
    for (const FewShotExample& e : recipe.few_shot_examples) {
      prompt += "Post: " + e.caption + "\n" + e.explanation + "\n\n";
    }
  }
  if (!recipe.positive_bias_clause.empty()) {
    prompt += recipe.positive_bias_clause + "\n\n";
  }
  prompt += "Post: " + corpus::StripDisclosures(caption) + "\n";
  return prompt;
}

}  // namespace adlabel::explainer
