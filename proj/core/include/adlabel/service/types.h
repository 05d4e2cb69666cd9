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

#ifndef ADLABEL_SERVICE_TYPES_H_
#define ADLABEL_SERVICE_TYPES_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "adlabel/common/label.h"

namespace adlabel::service {

enum class Expertise { kNoExperience, kSomeExperience, kLegalExpert };
enum class Setup { kWithExplanations, kWithoutExplanations };

std::string_view ExpertiseName(Expertise expertise);
// kValidation on unknown names.
Expertise ParseExpertise(std::string_view name);
std::string_view SetupName(Setup setup);
Setup ParseSetup(std::string_view name);

struct Annotator {
  // Opaque; must not identify the person.
  std::string annotator_id;
  Expertise expertise = Expertise::kNoExperience;
  std::set<Setup> setups;
};

struct Project {
  std::string project_id;
  std::string annotator_id;
  Setup setup = Setup::kWithoutExplanations;
  std::string batch_id;
  std::uint64_t seed = 0;
  std::vector<std::string> item_order;
  std::string created_at;
};

// The id used for a project's labels in exports and reports. Annotators
// who work in both setups appear as two raters.
std::string RaterId(const Project& project);

struct LabelRecord {
  std::string project_id;
  std::string post_id;
  Label label = Label::kNonSponsored;
  std::string labeled_at;
};

inline constexpr std::string_view kExplanationOpen =
    "----- AI explanation -----";
inline constexpr std::string_view kExplanationClose =
    "----- end of AI explanation -----";

struct ItemView {
  std::string post_id;
  std::string caption;
  std::optional<std::string> explanation_block;
  // 1-based index into the project's item order.
  std::size_t position = 0;
  std::size_t total = 0;
};

struct AttentionReport {
  std::size_t disclosed_total = 0;
  std::size_t disclosed_seen = 0;
  std::size_t disclosed_correct = 0;
  // Absent until a disclosed item has been labelled.
  std::optional<double> accuracy;
};

enum class Aspect { kReasoning, kSpecificWords, kClearExamples, kOther, kNone };

std::string_view AspectName(Aspect aspect);
Aspect ParseAspect(std::string_view name);

struct SurveyResponse {
  std::string project_id;
  int q1_helpful = 0;
  int q2_accurate = 0;
  int q3_agree_freq = 0;
  bool q4_confidence = false;
  std::set<Aspect> q5_aspects;
  // Required when q5 includes kOther.
  std::string q5_other;
  std::string q6_understanding;
  std::string q7_improvements;
};

// kValidation when a closed answer is out of range or q5 is inconsistent.
void ValidateSurvey(const SurveyResponse& response);

}  // namespace adlabel::service

#endif  // ADLABEL_SERVICE_TYPES_H_
