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

#include "adlabel/explainer/explainer.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "adlabel/common/error.h"
#include "adlabel/explainer/local_explain.h"

namespace adlabel::explainer {

Explainer::Explainer(PromptRecipe recipe, CompletionClient* client,
                     const detector::DetectorModel* local_model,
                     std::size_t local_top_k)
    : recipe_(std::move(recipe)),
      digest_(RecipeDigest(recipe_)),
      client_(client),
      local_model_(local_model),
      local_top_k_(local_top_k) {}

ExplainOutcome Explainer::Explain(std::string_view post_id,
                                  std::string_view stripped_caption) {
  std::string reason = "no remote endpoint configured";
  if (client_ != nullptr) {
    try {
      const CompletionResult result =
          client_->Complete({std::string(post_id),
                             BuildPrompt(stripped_caption, recipe_), digest_});
      Explanation e =
          ParseExplanation(ExtractMessageContent(result.raw_response), post_id,
                           recipe_.label_phrasings);
      e.source = ExplanationSource::kRemote;
      e.producer = client_->config().model;
      return {std::move(e), {}};
    } catch (const Error& err) {
      const ErrorCode code = err.code();
      if (code != ErrorCode::kTransport && code != ErrorCode::kCredential &&
          code != ErrorCode::kFormat) {
        throw;
      }
      reason = err.what();
    }
  }
  if (local_model_ == nullptr) {
    Fail(ErrorCode::kUnavailable, "no explanation for {}: {}", post_id, reason);
  }
  return {LocalExplain(*local_model_, post_id, stripped_caption, local_top_k_),
          std::move(reason)};
}

std::vector<ExplainOutcome> Explainer::ExplainAll(
    std::span<const corpus::WeakLabeledPost> posts, std::size_t workers) {
  std::vector<ExplainOutcome> out(posts.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first_error;
  std::mutex error_mu;
  const auto work = [&] {
    while (!stop) {
      const std::size_t i = next++;
      if (i >= posts.size()) return;
      try {
        out[i] = Explain(posts[i].post.post_id, posts[i].stripped_caption);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        stop = true;
      }
    }
  };
  std::vector<std::thread> threads;
  const std::size_t count =
      std::clamp<std::size_t>(workers, 1, posts.size() + 1);
  for (std::size_t t = 1; t < count; ++t) threads.emplace_back(work);
  work();
  for (std::thread& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace adlabel::explainer
