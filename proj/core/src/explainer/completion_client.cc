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

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>

#include "adlabel/common/digest.h"
#include "adlabel/common/error.h"
#include "adlabel/common/file_util.h"
#include "httplib.h"
#include "json.hpp"

namespace adlabel::explainer {
namespace {

using nlohmann::json;

struct SplitUrl {
  std::string scheme_host_port;
  std::string path_prefix;
};

SplitUrl SplitBaseUrl(std::string_view url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    Fail(ErrorCode::kValidation, "endpoint url \"{}\" has no scheme", url);
  }
  const std::size_t slash = url.find('/', scheme_end + 3);
  SplitUrl out;
  out.scheme_host_port = std::string(url.substr(0, slash));
  if (slash != std::string_view::npos) {
    std::string_view prefix = url.substr(slash);
    while (!prefix.empty() && prefix.back() == '/') prefix.remove_suffix(1);
    out.path_prefix = std::string(prefix);
  }
  return out;
}

bool Retryable(int status) { return status == 429 || status >= 500; }

// Holds one in-flight slot for its lifetime.
class SlotGuard {
 public:
  SlotGuard(std::mutex& mu, std::condition_variable& cv, int& in_flight,
            int limit)
      : mu_(mu), cv_(cv), in_flight_(in_flight) {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < std::max(limit, 1); });
    ++in_flight_;
  }
  ~SlotGuard() {
    {
      std::lock_guard lock(mu_);
      --in_flight_;
    }
    cv_.notify_one();
  }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::mutex& mu_;
  std::condition_variable& cv_;
  int& in_flight_;
};

}  // namespace

CompletionCache::CompletionCache(std::filesystem::path dir)
    : dir_(std::move(dir)) {}

std::string CompletionCache::Key(std::string_view post_id,
                                 std::string_view recipe_digest,
                                 std::string_view model) {
  return Sha256Hex(fmt::format("{}:{}|{}:{}|{}:{}", post_id.size(), post_id,
                               recipe_digest.size(), recipe_digest,
                               model.size(), model));
}

std::filesystem::path CompletionCache::PathFor(const std::string& key) const {
  return dir_ / key.substr(0, 2) / (key + ".json");
}

std::mutex& CompletionCache::StripeFor(const std::string& key) {
  return stripes_[std::hash<std::string>{}(key) % stripes_.size()];
}

std::optional<std::string> CompletionCache::Get(const std::string& key) const {
  std::string contents;
  try {
    contents = ReadFile(PathFor(key));
  } catch (const Error&) {
    return std::nullopt;
  }
  const json entry = json::parse(contents, nullptr, /*allow_exceptions=*/false);
  if (entry.is_discarded() || !entry.is_object() ||
      entry.value("cache_key", std::string()) != key ||
      !entry.contains("raw_response") || !entry["raw_response"].is_string()) {
    return std::nullopt;
  }
  return entry["raw_response"].get<std::string>();
}

void CompletionCache::Put(const std::string& key, std::string_view raw_response,
                          corpus::Timestamp created_at) {
  const json entry = {{"cache_key", key},
                      {"raw_response", raw_response},
                      {"created_at", corpus::FormatTimestamp(created_at)}};
  std::lock_guard lock(StripeFor(key));
  WriteFileAtomic(PathFor(key),
                  entry.dump(-1, ' ', false, json::error_handler_t::replace));
}

TokenBucket::TokenBucket(double rate_per_second, int burst)
    : rate_(rate_per_second),
      capacity_(std::max(burst, 1)),
      tokens_(capacity_),
      last_(Clock::now()) {}

void TokenBucket::Acquire() {
  if (rate_ <= 0) return;
  std::unique_lock lock(mu_);
  while (true) {
    const Clock::time_point now = Clock::now();
    const std::chrono::duration<double> elapsed = now - last_;
    tokens_ = std::min(capacity_, tokens_ + elapsed.count() * rate_);
    last_ = now;
    if (tokens_ >= 1.0) {
      tokens_ -= 1.0;
      return;
    }
    const std::chrono::duration<double> wait((1.0 - tokens_) / rate_);
    lock.unlock();
    std::this_thread::sleep_for(wait);
    lock.lock();
  }
}

CompletionClient::CompletionClient(EndpointConfig config,
                                   CompletionCache* cache)
    : config_(std::move(config)),
      cache_(cache),
      bucket_(config_.requests_per_second, config_.burst) {}

int CompletionClient::requests_sent() const {
  std::lock_guard lock(stats_mu_);
  return requests_sent_;
}

std::string CompletionClient::RequestBody(
    const CompletionRequest& request) const {
  const json body = {
      {"model", config_.model},
      {"temperature", config_.temperature},
      {"messages",
       json::array({{{"role", "user"}, {"content", request.prompt}}})},
  };
  return body.dump(-1, ' ', false, json::error_handler_t::replace);
}

CompletionResult CompletionClient::Complete(const CompletionRequest& request) {
  const std::string key = CompletionCache::Key(
      request.post_id, request.recipe_digest, config_.model);
  if (cache_ != nullptr) {
    if (auto hit = cache_->Get(key)) {
      return CompletionResult{std::move(*hit), true, 0};
    }
  }

  const char* credential = std::getenv(config_.api_key_env.c_str());
  if (credential == nullptr || *credential == '\0') {
    Fail(ErrorCode::kCredential, "environment variable {} is not set",
         config_.api_key_env);
  }
  const SplitUrl url = SplitBaseUrl(config_.base_url);
  const std::string path = url.path_prefix + config_.path;
  const std::string body = RequestBody(request);
  const httplib::Headers headers = {
      {"Authorization", std::string("Bearer ") + credential}};

  SlotGuard slot(in_flight_mu_, in_flight_cv_, in_flight_,
                 config_.max_in_flight);
  std::string last_error;
  std::chrono::milliseconds backoff = config_.initial_backoff;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff = std::min(backoff * 2, config_.max_backoff);
    }
    bucket_.Acquire();
    {
      std::lock_guard lock(stats_mu_);
      ++requests_sent_;
    }
    httplib::Client http(url.scheme_host_port);
    http.set_connection_timeout(config_.timeout);
    http.set_read_timeout(config_.timeout);
    http.set_write_timeout(config_.timeout);
    const httplib::Result res =
        http.Post(path.c_str(), headers, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) {
      if (cache_ != nullptr) {
        cache_->Put(key, res->body,
                    std::chrono::floor<std::chrono::seconds>(
                        std::chrono::system_clock::now()));
      }
      return CompletionResult{res->body, false, attempt + 1};
    }
    if (res->status == 401 || res->status == 403) {
      Fail(ErrorCode::kCredential, "endpoint rejected the credential (HTTP {})",
           res->status);
    }
    if (!Retryable(res->status)) {
      Fail(ErrorCode::kTransport, "endpoint answered HTTP {}", res->status);
    }
    last_error = fmt::format("HTTP {}", res->status);
  }
  Fail(ErrorCode::kTransport, "gave up after {} attempts: {}",
       config_.max_retries + 1, last_error);
}

std::string ExtractMessageContent(std::string_view body) {
  const json root = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) Fail(ErrorCode::kFormat, "response is not JSON");
  try {
    return root.at("choices")
        .at(0)
        .at("message")
        .at("content")
        .get<std::string>();
  } catch (const json::exception&) {
    Fail(ErrorCode::kFormat, "response has no choices[0].message.content");
  }
}

}  // namespace adlabel::explainer
