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

#ifndef ADLABEL_DETECTOR_DETECTOR_H_
#define ADLABEL_DETECTOR_DETECTOR_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adlabel/corpus/weak_label.h"
#include "adlabel/detector/evaluation.h"
#include "adlabel/detector/logistic_regression.h"
#include "adlabel/detector/vectorizer.h"

namespace adlabel::detector {

struct DetectorOptions {
  VectorizerOptions vectorizer;
  TrainingOptions training;
  std::string model_id = "logreg-tfidf";
};

// A fitted vectorizer and classifier. Immutable once built, so a single
// instance can be shared across threads.
struct DetectorModel {
  std::string model_id;
  Vectorizer vectorizer;
  LogisticRegression classifier;

  Prediction Predict(std::string_view post_id, std::string_view caption) const;
};

// Fits the vectorizer on the training captions only (stripped captions,
// weak labels) and trains the classifier on them.
DetectorModel TrainDetector(std::span<const corpus::WeakLabeledPost> train,
                            const DetectorOptions& options = {});

std::vector<Prediction> PredictAll(
    const DetectorModel& model, std::span<const corpus::WeakLabeledPost> posts);

// Truth derived from weak labels: sponsored == disclosed.
std::vector<TruthItem> WeakTruth(
    std::span<const corpus::WeakLabeledPost> posts);

// Versioned, self-describing JSON artifact: tokenizer config, n-gram range,
// min_df, vocabulary, idf, weights, bias, hyperparameters and training meta.
std::string SerializeModel(const DetectorModel& model);
// Throws kParse on malformed or unsupported artifacts.
DetectorModel ParseModel(std::string_view json);

}  // namespace adlabel::detector

#endif  // ADLABEL_DETECTOR_DETECTOR_H_
