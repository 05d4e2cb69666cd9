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

#include "adlabel/detector/detector.h"

#include "adlabel/common/error.h"
#include "json.hpp"

namespace adlabel::detector {
namespace {

using nlohmann::json;

constexpr std::string_view kModelFormat = "adlabel-logreg-tfidf";
constexpr int kModelVersion = 1;

}  // namespace

Prediction DetectorModel::Predict(std::string_view post_id,
                                  std::string_view caption) const {
  const SparseVector x = vectorizer.Transform(caption);
  const double p = classifier.Probability(x);
  return Prediction{std::string(post_id),
                    p >= 0.5 ? Label::kSponsored : Label::kNonSponsored, p,
                    model_id};
}

DetectorModel TrainDetector(std::span<const corpus::WeakLabeledPost> train,
                            const DetectorOptions& options) {
  std::vector<std::string> captions;
  std::vector<Label> labels;
  captions.reserve(train.size());
  labels.reserve(train.size());
  for (const corpus::WeakLabeledPost& post : train) {
    captions.push_back(post.stripped_caption);
    labels.push_back(post.weak_label);
  }
  DetectorModel model;
  model.model_id = options.model_id;
  model.vectorizer = Vectorizer::Fit(captions, options.vectorizer);
  std::vector<SparseVector> features;
  features.reserve(captions.size());
  for (const std::string& caption : captions) {
    features.push_back(model.vectorizer.Transform(caption));
  }
  model.classifier = LogisticRegression::Train(
      features, labels, model.vectorizer.size(), options.training);
  return model;
}

std::vector<Prediction> PredictAll(
    const DetectorModel& model,
    std::span<const corpus::WeakLabeledPost> posts) {
  std::vector<Prediction> out;
  out.reserve(posts.size());
  for (const corpus::WeakLabeledPost& post : posts) {
    out.push_back(model.Predict(post.post.post_id, post.stripped_caption));
  }
  return out;
}

std::vector<TruthItem> WeakTruth(
    std::span<const corpus::WeakLabeledPost> posts) {
  std::vector<TruthItem> out;
  out.reserve(posts.size());
  for (const corpus::WeakLabeledPost& post : posts) {
    out.push_back({post.post.post_id, post.disclosed(), post.disclosed()});
  }
  return out;
}

std::string SerializeModel(const DetectorModel& model) {
  const VectorizerOptions& vo = model.vectorizer.options();
  const TrainingOptions& to = model.classifier.options();
  const TrainingMeta& meta = model.classifier.meta();
  const json root = {
      {"format", kModelFormat},
      {"version", kModelVersion},
      {"model_id", model.model_id},
      {"decision_threshold", 0.5},
      {"tokenizer",
       {{"lowercase", vo.tokenizer.lowercase},
        {"url_placeholder", vo.tokenizer.url_placeholder},
        {"keep_hashtags", vo.tokenizer.keep_hashtags},
        {"keep_mentions", vo.tokenizer.keep_mentions}}},
      {"vectorizer",
       {{"min_n", vo.min_n},
        {"max_n", vo.max_n},
        {"min_df", vo.min_df},
        {"document_count", model.vectorizer.document_count()},
        {"tf", "raw_count"},
        {"idf", "ln((1+N)/(1+df))+1"},
        {"normalization", "l2"},
        {"vocabulary", model.vectorizer.terms()},
        {"idf_values", model.vectorizer.idf()}}},
      {"classifier",
       {{"weights", model.classifier.weights()},
        {"bias", model.classifier.bias()}}},
      {"hyperparameters",
       {{"learning_rate", to.learning_rate},
        {"max_epochs", to.max_epochs},
        {"l2_lambda", to.l2_lambda},
        {"tolerance", to.tolerance}}},
      {"training",
       {{"epochs", meta.epochs},
        {"initial_loss", meta.initial_loss},
        {"final_loss", meta.final_loss}}},
  };
  return root.dump(1, ' ', false, json::error_handler_t::replace) + "\n";
}

DetectorModel ParseModel(std::string_view text) {
  const json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object()) {
    Fail(ErrorCode::kParse, "model artifact is not a JSON object");
  }
  try {
    if (root.at("format").get<std::string>() != kModelFormat) {
      Fail(ErrorCode::kParse, "not an {} artifact", kModelFormat);
    }
    const int version = root.at("version").get<int>();
    if (version != kModelVersion) {
      Fail(ErrorCode::kParse, "unsupported model version {}", version);
    }
    VectorizerOptions vo;
    const json& tok = root.at("tokenizer");
    vo.tokenizer.lowercase = tok.at("lowercase").get<bool>();
    vo.tokenizer.url_placeholder = tok.at("url_placeholder").get<std::string>();
    vo.tokenizer.keep_hashtags = tok.at("keep_hashtags").get<bool>();
    vo.tokenizer.keep_mentions = tok.at("keep_mentions").get<bool>();
    const json& vec = root.at("vectorizer");
    vo.min_n = vec.at("min_n").get<int>();
    vo.max_n = vec.at("max_n").get<int>();
    vo.min_df = vec.at("min_df").get<int>();

    DetectorModel model;
    model.model_id = root.at("model_id").get<std::string>();
    model.vectorizer = Vectorizer::FromParts(
        vo, vec.at("vocabulary").get<std::vector<std::string>>(),
        vec.at("idf_values").get<std::vector<double>>(),
        vec.at("document_count").get<std::size_t>());

    TrainingOptions to;
    const json& hyper = root.at("hyperparameters");
    to.learning_rate = hyper.at("learning_rate").get<double>();
    to.max_epochs = hyper.at("max_epochs").get<int>();
    to.l2_lambda = hyper.at("l2_lambda").get<double>();
    to.tolerance = hyper.at("tolerance").get<double>();
    TrainingMeta meta;
    const json& training = root.at("training");
    meta.epochs = training.at("epochs").get<int>();
    meta.initial_loss = training.at("initial_loss").get<double>();
    meta.final_loss = training.at("final_loss").get<double>();

    const json& clf = root.at("classifier");
    auto weights = clf.at("weights").get<std::vector<double>>();
    if (weights.size() != model.vectorizer.size()) {
      Fail(ErrorCode::kParse, "{} weights for a vocabulary of {}",
           weights.size(), model.vectorizer.size());
    }
    model.classifier = LogisticRegression(
        std::move(weights), clf.at("bias").get<double>(), to, std::move(meta));
    return model;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, "malformed model artifact: {}", e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    Fail(ErrorCode::kParse, "invalid model artifact: {}", e.what());
  }
}

}  // namespace adlabel::detector
