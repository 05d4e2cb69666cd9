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

#include "adlabel/service/http_api.h"

#include <exception>
#include <functional>
#include <utility>

#include "adlabel/common/label.h"
#include "codec.h"
#include "httplib.h"

namespace adlabel::service {

using nlohmann::json;

namespace {

void SendJson(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(Dump(body) + "\n", "application/json");
}

json ParseBody(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    Fail(ErrorCode::kParse, "request body must be a JSON object");
  }
  return body;
}

std::string RequireString(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_string()) {
    Fail(ErrorCode::kValidation, "\"{}\" must be a string", key);
  }
  return body[key].get<std::string>();
}

using Handler =
    std::function<void(const httplib::Request&, httplib::Response&)>;

// Maps thrown errors to JSON error responses.
httplib::Server::Handler Guard(Handler handler) {
  return [handler = std::move(handler)](const httplib::Request& req,
                                        httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const Error& e) {
      SendJson(res, StatusFor(e.code()),
               {{"error", ErrorCodeName(e.code())}, {"message", e.what()}});
    } catch (const json::exception& e) {
      SendJson(res, 400, {{"error", "parse"}, {"message", e.what()}});
    } catch (const std::exception& e) {
      SendJson(res, 500, {{"error", "internal"}, {"message", e.what()}});
    }
  };
}

}  // namespace

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kConflict:
      return 409;
    case ErrorCode::kPrecondition:
      return 412;
    case ErrorCode::kValidation:
    case ErrorCode::kUndefinedMetric:
      return 422;
    default:
      return 500;
  }
}

struct ApiServer::Impl {
  explicit Impl(AnnotationStore& s) : store(s) {}

  AnnotationStore& store;
  httplib::Server server;
};

ApiServer::ApiServer(AnnotationStore& store)
    : impl_(std::make_unique<Impl>(store)) {
  AnnotationStore& s = store;
  httplib::Server& srv = impl_->server;

  srv.Post("/projects",
           Guard([&s](const httplib::Request& req, httplib::Response& res) {
             const json body = ParseBody(req);
             CreateProjectRequest request;
             request.annotator_id = RequireString(body, "annotator_id");
             request.expertise =
                 ParseExpertise(RequireString(body, "expertise"));
             request.batch_id = RequireString(body, "batch_id");
             request.setup = ParseSetup(RequireString(body, "setup"));
             if (body.contains("seed")) {
               if (!body["seed"].is_number_unsigned()) {
                 Fail(ErrorCode::kValidation,
                      "\"seed\" must be a non-negative integer");
               }
               request.seed = body["seed"].get<std::uint64_t>();
             }
             SendJson(res, 201, ProjectToJson(s.CreateProject(request)));
           }));

  srv.Get(R"(/projects/([^/]+)/next)",
          Guard([&s](const httplib::Request& req, httplib::Response& res) {
            const std::string id = req.matches[1];
            const auto view = s.NextItem(id);
            if (!view) {
              const std::size_t total = s.GetProject(id).item_order.size();
              SendJson(res, 200, {{"done", true}, {"total", total}});
              return;
            }
            SendJson(res, 200, ItemViewToJson(*view));
          }));

  srv.Post(R"(/projects/([^/]+)/labels)",
           Guard([&s](const httplib::Request& req, httplib::Response& res) {
             const json body = ParseBody(req);
             Label label;
             try {
               label = ParseLabel(RequireString(body, "label"));
             } catch (const Error& e) {
               throw Error(ErrorCode::kValidation, e.what());
             }
             const LabelRecord r = s.SubmitLabel(
                 req.matches[1].str(), RequireString(body, "post_id"), label);
             json out = LabelRecordToJson(r);
             out["labelled"] = s.Labels(r.project_id).size();
             SendJson(res, 200, out);
           }));

  srv.Get(R"(/projects/([^/]+)/attention)",
          Guard([&s](const httplib::Request& req, httplib::Response& res) {
            SendJson(res, 200,
                     AttentionToJson(s.Attention(req.matches[1].str())));
          }));

  srv.Post(R"(/projects/([^/]+)/survey)",
           Guard([&s](const httplib::Request& req, httplib::Response& res) {
             json body = ParseBody(req);
             body["project_id"] = req.matches[1].str();
             s.SubmitSurvey(SurveyFromJson(body));
             SendJson(res, 201,
                      {{"project_id", req.matches[1].str()}, {"stored", true}});
           }));

  srv.Get(R"(/batches/([^/]+)/export)",
          Guard([&s](const httplib::Request& req, httplib::Response& res) {
            ExportFilter filter;
            if (req.has_param("expertise")) {
              filter.expertise =
                  ParseExpertise(req.get_param_value("expertise"));
            }
            if (req.has_param("setup")) {
              filter.setup = ParseSetup(req.get_param_value("setup"));
            }
            const LabelExport out = s.Export(req.matches[1].str(), filter);
            const std::string format =
                req.has_param("format") ? req.get_param_value("format") : "csv";
            if (format == "csv") {
              res.set_content(out.labels_csv, "text/csv");
            } else if (format == "manifest") {
              res.set_content(out.manifest_json, "application/json");
            } else {
              Fail(ErrorCode::kValidation, "unknown format \"{}\"", format);
            }
          }));

  srv.Get("/reports/agreement",
          Guard([&s](const httplib::Request& req, httplib::Response& res) {
            if (!req.has_param("batch")) {
              Fail(ErrorCode::kValidation, "missing \"batch\" parameter");
            }
            const std::string format = req.has_param("format")
                                           ? req.get_param_value("format")
                                           : "json";
            if (format != "json" && format != "text") {
              Fail(ErrorCode::kValidation, "unknown format \"{}\"", format);
            }
            const bool text = format == "text";
            res.set_content(s.Report(req.get_param_value("batch"), text),
                            text ? "text/plain" : "application/json");
          }));
}

ApiServer::~ApiServer() { Stop(); }

int ApiServer::Bind(const std::string& host, int port) {
  httplib::Server& srv = impl_->server;
  if (port == 0) {
    const int bound = srv.bind_to_any_port(host);
    if (bound < 0) Fail(ErrorCode::kIo, "cannot bind {}", host);
    return bound;
  }
  if (!srv.bind_to_port(host, port)) {
    Fail(ErrorCode::kIo, "cannot bind {}:{}", host, port);
  }
  return port;
}

void ApiServer::Serve() { impl_->server.listen_after_bind(); }

void ApiServer::WaitUntilReady() { impl_->server.wait_until_ready(); }

void ApiServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace adlabel::service
