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

#include "adlabel/service/types.h"

#include <array>
#include <utility>

#include "adlabel/common/error.h"

namespace adlabel::service {
namespace {

constexpr std::array<std::pair<Expertise, std::string_view>, 3> kExpertise{{
    {Expertise::kNoExperience, "NoExperience"},
    {Expertise::kSomeExperience, "SomeExperience"},
    {Expertise::kLegalExpert, "LegalExpert"},
}};

constexpr std::array<std::pair<Setup, std::string_view>, 2> kSetups{{
    {Setup::kWithExplanations, "WithExplanations"},
    {Setup::kWithoutExplanations, "WithoutExplanations"},
}};

constexpr std::array<std::pair<Aspect, std::string_view>, 5> kAspects{{
    {Aspect::kReasoning, "Reasoning"},
    {Aspect::kSpecificWords, "SpecificWords"},
    {Aspect::kClearExamples, "ClearExamples"},
    {Aspect::kOther, "Other"},
    {Aspect::kNone, "None"},
}};

template <typename E, std::size_t N>
std::string_view NameOf(
    const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

template <typename E, std::size_t N>
E ValueOf(const std::array<std::pair<E, std::string_view>, N>& table,
          std::string_view name, std::string_view what) {
  for (const auto& [v, n] : table) {
    if (n == name) return v;
  }
  Fail(ErrorCode::kValidation, "unknown {} \"{}\"", what, name);
}

void CheckScale(int value, std::string_view question) {
  if (value < 1 || value > 5) {
    Fail(ErrorCode::kValidation, "{} must be between 1 and 5, got {}", question,
         value);
  }
}

}  // namespace

std::string_view ExpertiseName(Expertise expertise) {
  return NameOf(kExpertise, expertise);
}

Expertise ParseExpertise(std::string_view name) {
  return ValueOf(kExpertise, name, "expertise");
}

std::string_view SetupName(Setup setup) { return NameOf(kSetups, setup); }

Setup ParseSetup(std::string_view name) {
  return ValueOf(kSetups, name, "setup");
}

std::string_view AspectName(Aspect aspect) { return NameOf(kAspects, aspect); }

Aspect ParseAspect(std::string_view name) {
  return ValueOf(kAspects, name, "aspect");
}

std::string RaterId(const Project& project) {
  return project.annotator_id + (project.setup == Setup::kWithExplanations
                                     ? "@with_explanations"
                                     : "@without_explanations");
}

void ValidateSurvey(const SurveyResponse& response) {
  CheckScale(response.q1_helpful, "q1_helpful");
  CheckScale(response.q2_accurate, "q2_accurate");
  CheckScale(response.q3_agree_freq, "q3_agree_freq");
  if (response.q5_aspects.empty()) {
    Fail(ErrorCode::kValidation, "q5_aspects needs at least one choice");
  }
  if (response.q5_aspects.contains(Aspect::kNone) &&
      response.q5_aspects.size() > 1) {
    Fail(ErrorCode::kValidation, "q5_aspects: None excludes other choices");
  }
  const bool other = response.q5_aspects.contains(Aspect::kOther);
  if (other && response.q5_other.empty()) {
    Fail(ErrorCode::kValidation, "q5_aspects: Other needs a description");
  }
  if (!other && !response.q5_other.empty()) {
    Fail(ErrorCode::kValidation, "q5_other given without choosing Other");
  }
}

}  // namespace adlabel::service
