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

#include <thread>

#include "gtest/gtest.h"
#include "httplib.h"
#include "json.hpp"
#include "support/simulation.h"

namespace adlabel::service {
namespace {

using nlohmann::json;

class ApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    store_.AddBatch(testing::MakeBatch("b1", 12, 3, true));
    server_ = std::make_unique<ApiServer>(store_);
    const int port = server_->Bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_->Serve(); });
    server_->WaitUntilReady();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port);
  }

  void TearDown() override {
    server_->Stop();
    thread_.join();
  }

  httplib::Result Post(const std::string& path, const json& body) {
    return client_->Post(path, body.dump(), "application/json");
  }

  std::string NewProject(const std::string& annotator,
                         const std::string& setup) {
    auto res = Post("/projects", {{"annotator_id", annotator},
                                  {"expertise", "LegalExpert"},
                                  {"batch_id", "b1"},
                                  {"setup", setup},
                                  {"seed", 4}});
    EXPECT_EQ(res->status, 201) << res->body;
    return json::parse(res->body)["project_id"];
  }

  AnnotationStore store_;
  std::unique_ptr<ApiServer> server_;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(ApiTest, LabellingFlow) {
  const std::string id = NewProject("a1", "WithExplanations");
  std::size_t served = 0;
  while (true) {
    auto res = client_->Get("/projects/" + id + "/next");
    ASSERT_EQ(res->status, 200);
    const json view = json::parse(res->body);
    if (view["done"].get<bool>()) {
      EXPECT_EQ(view["total"], 12);
      break;
    }
    ++served;
    EXPECT_EQ(view["position"], served);
    const std::string block = view["explanation_block"];
    EXPECT_NE(block.find(kExplanationOpen), std::string::npos);
    auto ack = Post("/projects/" + id + "/labels",
                    {{"post_id", view["post_id"]}, {"label", "Sponsored"}});
    ASSERT_EQ(ack->status, 200) << ack->body;
    EXPECT_EQ(json::parse(ack->body)["labelled"], served);
  }
  EXPECT_EQ(served, 12u);

  auto attention = client_->Get("/projects/" + id + "/attention");
  EXPECT_DOUBLE_EQ(json::parse(attention->body)["accuracy"].get<double>(), 1.0);

  const json survey = {{"q1_helpful", 5},        {"q2_accurate", 4},
                       {"q3_agree_freq", 4},     {"q4_confidence", false},
                       {"q5_aspects", {"None"}}, {"q6_understanding", ""},
                       {"q7_improvements", ""}};
  EXPECT_EQ(Post("/projects/" + id + "/survey", survey)->status, 201);
  EXPECT_EQ(Post("/projects/" + id + "/survey", survey)->status, 409);
}

TEST_F(ApiTest, WithoutExplanationsHasNoBlock) {
  const std::string id = NewProject("a1", "WithoutExplanations");
  const json view =
      json::parse(client_->Get("/projects/" + id + "/next")->body);
  EXPECT_TRUE(view["explanation_block"].is_null());
  auto attention = client_->Get("/projects/" + id + "/attention");
  EXPECT_TRUE(json::parse(attention->body)["accuracy"].is_null());
}

TEST_F(ApiTest, ErrorStatuses) {
  NewProject("a1", "WithoutExplanations");
  EXPECT_EQ(Post("/projects", {{"annotator_id", "a1"},
                               {"expertise", "LegalExpert"},
                               {"batch_id", "b1"},
                               {"setup", "WithoutExplanations"}})
                ->status,
            409);
  EXPECT_EQ(Post("/projects", {{"annotator_id", "a2"},
                               {"expertise", "Guru"},
                               {"batch_id", "b1"},
                               {"setup", "WithoutExplanations"}})
                ->status,
            422);
  EXPECT_EQ(Post("/projects", {{"annotator_id", "a2"},
                               {"expertise", "LegalExpert"},
                               {"batch_id", "zz"},
                               {"setup", "WithoutExplanations"}})
                ->status,
            404);
  EXPECT_EQ(client_->Post("/projects", "{nope", "application/json")->status,
            400);
  EXPECT_EQ(client_->Get("/projects/p-none/next")->status, 404);

  const std::string id = NewProject("a3", "WithoutExplanations");
  auto bad = Post("/projects/" + id + "/labels",
                  {{"post_id", "b000"}, {"label", "Maybe"}});
  EXPECT_EQ(bad->status, 422);
  EXPECT_EQ(json::parse(bad->body)["error"], "validation");
  EXPECT_EQ(
      Post("/projects/" + id + "/survey", {{"q4_confidence", true}})->status,
      422);
  EXPECT_EQ(client_->Get("/reports/agreement")->status, 422);
}

TEST_F(ApiTest, ExportAndReport) {
  for (const char* name : {"a1", "a2"}) {
    const std::string id = NewProject(name, "WithoutExplanations");
    while (true) {
      const json view =
          json::parse(client_->Get("/projects/" + id + "/next")->body);
      if (view["done"].get<bool>()) break;
      Post("/projects/" + id + "/labels",
           {{"post_id", view["post_id"]}, {"label", "NonSponsored"}});
    }
  }
  auto csv = client_->Get("/batches/b1/export");
  ASSERT_EQ(csv->status, 200);
  EXPECT_EQ(csv->body, store_.Export("b1").labels_csv);
  auto manifest = client_->Get("/batches/b1/export?format=manifest");
  EXPECT_EQ(json::parse(manifest->body)["batch_id"], "b1");
  auto filtered = client_->Get("/batches/b1/export?setup=WithExplanations");
  EXPECT_EQ(filtered->body, "annotator_id,post_id,label\n");

  auto report = client_->Get("/reports/agreement?batch=b1");
  ASSERT_EQ(report->status, 200) << report->body;
  EXPECT_DOUBLE_EQ(
      json::parse(report->body)["groups"][0]["abs_pct"].get<double>(), 100.0);
  auto text = client_->Get("/reports/agreement?batch=b1&format=text");
  EXPECT_EQ(text->get_header_value("Content-Type"), "text/plain");
  EXPECT_EQ(client_->Get("/reports/agreement?batch=b9")->status, 404);
}

}  // namespace
}  // namespace adlabel::service
