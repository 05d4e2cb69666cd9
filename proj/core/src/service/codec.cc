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

#include "codec.h"

#include "adlabel/common/error.h"

namespace adlabel::service {

using nlohmann::json;

json ProjectToJson(const Project& p) {
  return {{"project_id", p.project_id},
          {"annotator_id", p.annotator_id},
          {"setup", SetupName(p.setup)},
          {"batch_id", p.batch_id},
          {"seed", p.seed},
          {"item_order", p.item_order},
          {"created_at", p.created_at}};
}

Project ProjectFromJson(const json& j) {
  Project p;
  p.project_id = j.at("project_id").get<std::string>();
  p.annotator_id = j.at("annotator_id").get<std::string>();
  p.setup = ParseSetup(j.at("setup").get<std::string>());
  p.batch_id = j.at("batch_id").get<std::string>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.item_order = j.at("item_order").get<std::vector<std::string>>();
  p.created_at = j.at("created_at").get<std::string>();
  return p;
}

json ItemViewToJson(const ItemView& v) {
  json out = {{"done", false},
              {"post_id", v.post_id},
              {"caption", v.caption},
              {"position", v.position},
              {"total", v.total}};
  out["explanation_block"] =
      v.explanation_block ? json(*v.explanation_block) : json(nullptr);
  return out;
}

json LabelRecordToJson(const LabelRecord& r) {
  return {{"project_id", r.project_id},
          {"post_id", r.post_id},
          {"label", LabelName(r.label)},
          {"labeled_at", r.labeled_at}};
}

json AttentionToJson(const AttentionReport& r) {
  return {{"disclosed_total", r.disclosed_total},
          {"disclosed_seen", r.disclosed_seen},
          {"disclosed_correct", r.disclosed_correct},
          {"accuracy", r.accuracy ? json(*r.accuracy) : json(nullptr)}};
}

json AnnotatorToJson(const Annotator& a) {
  json setups = json::array();
  for (Setup s : a.setups) setups.push_back(SetupName(s));
  return {{"annotator_id", a.annotator_id},
          {"expertise", ExpertiseName(a.expertise)},
          {"setups", std::move(setups)}};
}

json SurveyToJson(const SurveyResponse& r) {
  json aspects = json::array();
  for (Aspect a : r.q5_aspects) aspects.push_back(AspectName(a));
  return {{"project_id", r.project_id},
          {"q1_helpful", r.q1_helpful},
          {"q2_accurate", r.q2_accurate},
          {"q3_agree_freq", r.q3_agree_freq},
          {"q4_confidence", r.q4_confidence},
          {"q5_aspects", std::move(aspects)},
          {"q5_other", r.q5_other},
          {"q6_understanding", r.q6_understanding},
          {"q7_improvements", r.q7_improvements}};
}

SurveyResponse SurveyFromJson(const json& j) {
  SurveyResponse r;
  r.project_id = j.value("project_id", "");
  r.q1_helpful = j.value("q1_helpful", 0);
  r.q2_accurate = j.value("q2_accurate", 0);
  r.q3_agree_freq = j.value("q3_agree_freq", 0);
  if (!j.contains("q4_confidence") || !j["q4_confidence"].is_boolean()) {
    Fail(ErrorCode::kValidation, "q4_confidence must be true or false");
  }
  r.q4_confidence = j["q4_confidence"].get<bool>();
  for (const json& a : j.value("q5_aspects", json::array())) {
    r.q5_aspects.insert(ParseAspect(a.get<std::string>()));
  }
  r.q5_other = j.value("q5_other", "");
  r.q6_understanding = j.value("q6_understanding", "");
  r.q7_improvements = j.value("q7_improvements", "");
  return r;
}

std::string Dump(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace adlabel::service
