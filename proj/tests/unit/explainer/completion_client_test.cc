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

#include "adlabel/explainer/completion_client.h"

#include <cstdlib>
#include <filesystem>
#include <set>

#include "adlabel/common/error.h"
#include "adlabel/explainer/explainer.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "support/fake_endpoint.h"

namespace adlabel::explainer {
namespace {

using testing::FakeEndpoint;

constexpr char kKeyVar[] = "ADLABEL_TEST_KEY";
constexpr char kGoodAnswer[] =
    "Key indicators: 'code'.\nA discount code suggests a deal.\nSponsored";

class CompletionClientTest : public ::testing::Test {
 protected:
  void SetUp() override {
    setenv(kKeyVar, "secret-token", 1);
    cache_dir_ =
        std::filesystem::temp_directory_path() /
        ("adlabel-cache-" + std::to_string(::getpid()) + "-" +
         ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(cache_dir_);
  }
  void TearDown() override { std::filesystem::remove_all(cache_dir_); }

  EndpointConfig Config(std::string base_url) const {
    EndpointConfig config;
    config.base_url = std::move(base_url);
    config.api_key_env = kKeyVar;
    config.model = "fixture-model";
    config.initial_backoff = std::chrono::milliseconds(5);
    config.max_backoff = std::chrono::milliseconds(20);
    config.timeout = std::chrono::seconds(5);
    config.requests_per_second = 0;
    config.max_retries = 3;
    return config;
  }

  static ErrorCode CodeOf(CompletionClient& client,
                          const CompletionRequest& request) {
    try {
      client.Complete(request);
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::kIo;
  }

  std::filesystem::path cache_dir_;
};

TEST_F(CompletionClientTest, RetriesTransientFailures) {
  FakeEndpoint server(
      {{503, "busy"}, {502, "bad gateway"}, {200, kGoodAnswer}});
  CompletionClient client(Config(server.base_url()), nullptr);
  const CompletionResult result = client.Complete({"p1", "prompt", "d"});
  EXPECT_EQ(result.attempts, 3);
  EXPECT_FALSE(result.from_cache);
  EXPECT_EQ(server.requests(), 3);
  EXPECT_EQ(ExtractMessageContent(result.raw_response), kGoodAnswer);
}

TEST_F(CompletionClientTest, SendsChatRequest) {
  FakeEndpoint server({{200, kGoodAnswer}});
  EndpointConfig config = Config(server.base_url() + "/proxy/");
  config.temperature = 0.0;
  CompletionClient client(config, nullptr);
  client.Complete({"p1", "the prompt", "d"});
  ASSERT_EQ(server.requests(), 1);
  const auto body = nlohmann::json::parse(server.bodies()[0]);
  EXPECT_EQ(body["model"], "fixture-model");
  EXPECT_EQ(body["temperature"], 0.0);
  EXPECT_EQ(body["messages"][0]["content"], "the prompt");
  EXPECT_EQ(server.authorizations()[0], "Bearer secret-token");
}

TEST_F(CompletionClientTest, CacheHitSkipsNetwork) {
  FakeEndpoint server({{200, kGoodAnswer}});
  CompletionCache cache(cache_dir_);
  CompletionClient client(Config(server.base_url()), &cache);
  const CompletionResult first = client.Complete({"p1", "prompt", "d"});
  const CompletionResult second = client.Complete({"p1", "prompt", "d"});
  EXPECT_EQ(server.requests(), 1);
  EXPECT_TRUE(second.from_cache);
  EXPECT_EQ(second.attempts, 0);
  EXPECT_EQ(second.raw_response, first.raw_response);

  // A fresh client over the same directory, with the credential gone,
  // still answers from the cache.
  unsetenv(kKeyVar);
  CompletionClient offline(Config(testing::DeadEndpointUrl()), &cache);
  EXPECT_EQ(offline.Complete({"p1", "prompt", "d"}).raw_response,
            first.raw_response);
  EXPECT_EQ(offline.requests_sent(), 0);
}

TEST_F(CompletionClientTest, RecipeChangeMissesCache) {
  FakeEndpoint server({{200, kGoodAnswer}});
  CompletionCache cache(cache_dir_);
  CompletionClient client(Config(server.base_url()), &cache);
  client.Complete({"p1", "prompt", "digest-a"});
  client.Complete({"p1", "prompt", "digest-b"});
  EXPECT_EQ(server.requests(), 2);
}

TEST_F(CompletionClientTest, CorruptCacheEntryIsAMiss) {
  CompletionCache cache(cache_dir_);
  const std::string key = CompletionCache::Key("p", "d", "m");
  cache.Put(key, "body", {});
  EXPECT_EQ(cache.Get(key), "body");
  std::filesystem::resize_file(cache_dir_ / key.substr(0, 2) / (key + ".json"),
                               5);
  EXPECT_FALSE(cache.Get(key).has_value());
}

TEST_F(CompletionClientTest, RejectedCredentialIsNotRetried) {
  FakeEndpoint server({{401, "{\"error\":\"bad key\"}"}});
  CompletionClient client(Config(server.base_url()), nullptr);
  EXPECT_EQ(CodeOf(client, {"p1", "prompt", "d"}), ErrorCode::kCredential);
  EXPECT_EQ(server.requests(), 1);
}

TEST_F(CompletionClientTest, MissingCredential) {
  FakeEndpoint server({{200, kGoodAnswer}});
  unsetenv(kKeyVar);
  CompletionClient client(Config(server.base_url()), nullptr);
  EXPECT_EQ(CodeOf(client, {"p1", "prompt", "d"}), ErrorCode::kCredential);
  EXPECT_EQ(server.requests(), 0);
}

TEST_F(CompletionClientTest, RetriesAreBounded) {
  FakeEndpoint server({{500, "down"}});
  CompletionClient client(Config(server.base_url()), nullptr);
  EXPECT_EQ(CodeOf(client, {"p1", "prompt", "d"}), ErrorCode::kTransport);
  EXPECT_EQ(server.requests(), 4);
}

TEST_F(CompletionClientTest, ClientErrorsAreNotRetried) {
  FakeEndpoint server({{400, "bad request"}});
  CompletionClient client(Config(server.base_url()), nullptr);
  EXPECT_EQ(CodeOf(client, {"p1", "prompt", "d"}), ErrorCode::kTransport);
  EXPECT_EQ(server.requests(), 1);
}

TEST_F(CompletionClientTest, DeadEndpointIsTransportError) {
  CompletionClient client(Config(testing::DeadEndpointUrl()), nullptr);
  EXPECT_EQ(CodeOf(client, {"p1", "prompt", "d"}), ErrorCode::kTransport);
  EXPECT_EQ(client.requests_sent(), 4);
}

TEST(CompletionCacheTest, KeyIsInjective) {
  std::set<std::string> keys;
  const std::vector<std::string> parts = {"", "a", "b", "ab", "a|b", "1:a"};
  std::size_t combos = 0;
  for (const auto& post : parts) {
    for (const auto& digest : parts) {
      for (const auto& model : parts) {
        keys.insert(CompletionCache::Key(post, digest, model));
        ++combos;
      }
    }
  }
  EXPECT_EQ(keys.size(), combos);
}

TEST(ExtractMessageContentTest, RejectsOtherShapes) {
  EXPECT_EQ(ExtractMessageContent(testing::ChatBody("hi")), "hi");
  EXPECT_THROW(ExtractMessageContent("not json"), Error);
  EXPECT_THROW(ExtractMessageContent("{\"choices\": []}"), Error);
}

TEST(TokenBucketTest, LimitsRate) {
  TokenBucket bucket(50.0, 1);
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 6; ++i) bucket.Acquire();
  EXPECT_GE(std::chrono::steady_clock::now() - start,
            std::chrono::milliseconds(90));
}

class ExplainerTest : public CompletionClientTest {
 protected:
  detector::DetectorModel LocalModel() {
    detector::VectorizerOptions options;
    options.max_n = 1;
    options.min_df = 1;
    detector::DetectorModel model;
    model.model_id = "local";
    model.vectorizer =
        detector::Vectorizer::FromParts(options, {"code"}, {1.0}, 1);
    model.classifier = detector::LogisticRegression({2.0}, -0.5, {}, {});
    return model;
  }
};

TEST_F(ExplainerTest, HealthyEndpointGivesRemote) {
  FakeEndpoint server({{200, kGoodAnswer}});
  CompletionClient client(Config(server.base_url()), nullptr);
  const auto model = LocalModel();
  Explainer explainer(DefaultRecipe(), &client, &model);
  const ExplainOutcome out = explainer.Explain("p1", "use code X");
  EXPECT_EQ(out.explanation.source, ExplanationSource::kRemote);
  EXPECT_EQ(out.explanation.producer, "fixture-model");
  EXPECT_TRUE(out.fallback_reason.empty());
  const auto body = nlohmann::json::parse(server.bodies()[0]);
  EXPECT_EQ(body["messages"][0]["content"],
            BuildPrompt("use code X", DefaultRecipe()));
}

TEST_F(ExplainerTest, DeadEndpointFallsBackToLocal) {
  CompletionClient client(Config(testing::DeadEndpointUrl()), nullptr);
  const auto model = LocalModel();
  Explainer explainer(DefaultRecipe(), &client, &model);
  const ExplainOutcome out = explainer.Explain("p1", "use code X");
  EXPECT_EQ(out.explanation.source, ExplanationSource::kLocalFallback);
  EXPECT_EQ(out.explanation.key_indicators, std::vector<std::string>{"code"});
  EXPECT_FALSE(out.fallback_reason.empty());
}

TEST_F(ExplainerTest, UnparseableAnswerFallsBack) {
  FakeEndpoint server({{200, "I cannot help with that."}});
  CompletionClient client(Config(server.base_url()), nullptr);
  const auto model = LocalModel();
  Explainer explainer(DefaultRecipe(), &client, &model);
  EXPECT_EQ(explainer.Explain("p1", "x").explanation.source,
            ExplanationSource::kLocalFallback);
}

TEST_F(ExplainerTest, NothingAvailableIsAnError) {
  CompletionClient client(Config(testing::DeadEndpointUrl()), nullptr);
  Explainer explainer(DefaultRecipe(), &client, nullptr);
  try {
    explainer.Explain("p1", "x");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnavailable);
  }
  Explainer offline(DefaultRecipe(), nullptr, nullptr);
  EXPECT_THROW(offline.Explain("p1", "x"), Error);
}

// Property: whenever the transport failed, the result is never remote.
TEST_F(ExplainerTest, TransportFailureNeverYieldsRemote) {
  std::vector<FakeEndpoint::Reply> script;
  for (int i = 0; i < 12; ++i) {
    script.push_back(i % 3 == 0 ? FakeEndpoint::Reply{200, kGoodAnswer}
                                : FakeEndpoint::Reply{503, "busy"});
  }
  FakeEndpoint server(script);
  EndpointConfig config = Config(server.base_url());
  config.max_retries = 0;
  CompletionClient client(config, nullptr);
  const auto model = LocalModel();
  Explainer explainer(DefaultRecipe(), &client, &model);
  for (int i = 0; i < 12; ++i) {
    const int before = server.requests();
    const ExplainOutcome out = explainer.Explain("p" + std::to_string(i), "x");
    ASSERT_EQ(server.requests(), before + 1);
    const bool failed = before % 3 != 0;
    if (failed) {
      EXPECT_EQ(out.explanation.source, ExplanationSource::kLocalFallback);
    } else {
      EXPECT_EQ(out.explanation.source, ExplanationSource::kRemote);
    }
  }
}

TEST_F(ExplainerTest, ExplainAllKeepsOrder) {
  FakeEndpoint server({{200, kGoodAnswer}});
  CompletionClient client(Config(server.base_url()), nullptr);
  Explainer explainer(DefaultRecipe(), &client, nullptr);
  std::vector<corpus::WeakLabeledPost> posts(7);
  for (std::size_t i = 0; i < posts.size(); ++i) {
    posts[i].post.post_id = "p" + std::to_string(i);
    posts[i].stripped_caption = "caption";
  }
  const auto outcomes = explainer.ExplainAll(posts, 3);
  ASSERT_EQ(outcomes.size(), posts.size());
  for (std::size_t i = 0; i < posts.size(); ++i) {
    EXPECT_EQ(outcomes[i].explanation.post_id, posts[i].post.post_id);
  }
  EXPECT_EQ(server.requests(), 7);
}

}  // namespace
}  // namespace adlabel::explainer
