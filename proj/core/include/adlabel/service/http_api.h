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

#ifndef ADLABEL_SERVICE_HTTP_API_H_
#define ADLABEL_SERVICE_HTTP_API_H_

#include <memory>
#include <string>

#include "adlabel/common/error.h"
#include "adlabel/service/annotation_store.h"

namespace adlabel::service {

// JSON-over-HTTP front end for an AnnotationStore.
//
//   POST /projects                 {annotator_id, expertise, batch_id, setup,
//   seed} GET  /projects/{id}/next       ItemView, or {"done": true} POST
//   /projects/{id}/labels     {post_id, label} GET  /projects/{id}/attention
//   POST /projects/{id}/survey     SurveyResponse fields
//   GET  /batches/{id}/export      ?format=csv|manifest&expertise=&setup=
//   GET  /reports/agreement        ?batch=&format=json|text
//
// Errors come back as {"error": <code>, "message": ...} with a 4xx/5xx
// status.
class ApiServer {
 public:
  explicit ApiServer(AnnotationStore& store);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Returns the bound port; kIo on failure. Port 0 picks a free one.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  void Serve();
  // Waits until a concurrent Serve() accepts connections.
  void WaitUntilReady();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// HTTP status used for an error code.
int StatusFor(ErrorCode code);

}  // namespace adlabel::service

#endif  // ADLABEL_SERVICE_HTTP_API_H_
