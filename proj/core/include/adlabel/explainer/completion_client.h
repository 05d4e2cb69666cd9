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

#ifndef ADLABEL_EXPLAINER_COMPLETION_CLIENT_H_
#define ADLABEL_EXPLAINER_COMPLETION_CLIENT_H_

#include <array>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "adlabel/corpus/post.h"

namespace adlabel::explainer {

struct EndpointConfig {
  // Scheme, host, optional port and optional path prefix,
  // e.g. "https://api.example.com" or "http://127.0.0.1:8080/proxy".
  std::string base_url;
  std::string path = "/v1/chat/completions";
  std::string model = "gpt-3.5-turbo";
  // Name of the environment variable holding the bearer token. The token
  // itself is never stored in config files.
  std::string api_key_env = "ADLABEL_API_KEY";
  double temperature = 0.0;

  int max_retries = 4;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds max_backoff{8000};
  std::chrono::seconds timeout{60};

  int max_in_flight = 4;
  double requests_per_second = 3.0;
  int burst = 3;
};

// Content-addressed response cache: <dir>/<key[0:2]>/<key>.json.
class CompletionCache {
 public:
  explicit CompletionCache(std::filesystem::path dir);

  // Hash of the length-prefixed (post_id, recipe digest, model) triple.
  static std::string Key(std::string_view post_id,
                         std::string_view recipe_digest,
                         std::string_view model);

  std::optional<std::string> Get(const std::string& key) const;
  // Single writer per key; concurrent readers see the old entry or the new
  // one, never a partial file.
  void Put(const std::string& key, std::string_view raw_response,
           corpus::Timestamp created_at);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path PathFor(const std::string& key) const;
  std::mutex& StripeFor(const std::string& key);

  std::filesystem::path dir_;
  std::array<std::mutex, 64> stripes_;
};

class TokenBucket {
 public:
  TokenBucket(double rate_per_second, int burst);
  // Blocks until a token is available.
  void Acquire();

 private:
  using Clock = std::chrono::steady_clock;
  std::mutex mu_;
  double rate_;
  double capacity_;
  double tokens_;
  Clock::time_point last_;
};

struct CompletionRequest {
  std::string post_id;
  std::string prompt;
  std::string recipe_digest;
};

struct CompletionResult {
  // The HTTP response body, byte-identical on cache hits.
  std::string raw_response;
  bool from_cache = false;
  int attempts = 0;
};

// Chat-completion client with caching, retries, rate limiting and an
// in-flight bound. Safe to share across threads.
class CompletionClient {
 public:
  // `cache` may be null.
  CompletionClient(EndpointConfig config, CompletionCache* cache);

  // kCredential on a missing credential or a 401/403 answer (not retried).
  // 429, 5xx and connection failures are retried with exponential backoff;
  // kTransport once retries run out or on other 4xx answers.
  CompletionResult Complete(const CompletionRequest& request);

  // Total HTTP requests issued so far.
  int requests_sent() const;

  const EndpointConfig& config() const { return config_; }

 private:
  std::string RequestBody(const CompletionRequest& request) const;

  EndpointConfig config_;
  CompletionCache* cache_;
  TokenBucket bucket_;
  std::mutex in_flight_mu_;
  std::condition_variable in_flight_cv_;
  int in_flight_ = 0;
  mutable std::mutex stats_mu_;
  int requests_sent_ = 0;
};

// Pulls choices[0].message.content out of a chat-completion body. kFormat
// when the body does not have that shape.
std::string ExtractMessageContent(std::string_view body);

}  // namespace adlabel::explainer

#endif  // ADLABEL_EXPLAINER_COMPLETION_CLIENT_H_
