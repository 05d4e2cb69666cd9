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

// JSON encodings shared by the store's event log and the HTTP API.

#ifndef ADLABEL_SRC_SERVICE_CODEC_H_
#define ADLABEL_SRC_SERVICE_CODEC_H_

#include <string>

#include "adlabel/service/types.h"
#include "json.hpp"

namespace adlabel::service {

nlohmann::json ProjectToJson(const Project& project);
// Throws nlohmann::json exceptions or kValidation on bad fields.
Project ProjectFromJson(const nlohmann::json& j);

nlohmann::json ItemViewToJson(const ItemView& view);
nlohmann::json LabelRecordToJson(const LabelRecord& record);
nlohmann::json AttentionToJson(const AttentionReport& report);
nlohmann::json AnnotatorToJson(const Annotator& annotator);

nlohmann::json SurveyToJson(const SurveyResponse& response);
// Missing closed answers read as 0 and fail validation later.
SurveyResponse SurveyFromJson(const nlohmann::json& j);

std::string Dump(const nlohmann::json& j);

}  // namespace adlabel::service

#endif  // ADLABEL_SRC_SERVICE_CODEC_H_
