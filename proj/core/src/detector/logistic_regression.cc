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

#include "adlabel/detector/logistic_regression.h"

#include <cmath>

#include "adlabel/common/error.h"

namespace adlabel::detector {
namespace {

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double Target(Label label) { return label == Label::kSponsored ? 1.0 : 0.0; }

}  // namespace

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LossAndGradient ComputeLossAndGradient(std::span<const SparseVector> features,
                                       std::span<const Label> labels,
                                       std::span<const double> weights,
                                       double bias, double l2_lambda) {
  LossAndGradient out;
  out.weight_gradient.assign(weights.size(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    const SparseVector& x = features[i];
    const double y = Target(labels[i]);
    const double z = x.Dot(weights) + bias;
    out.loss += (Softplus(z) - y * z) * inv_n;
    const double residual = (Sigmoid(z) - y) * inv_n;
    out.bias_gradient += residual;
    for (std::size_t k = 0; k < x.indices.size(); ++k) {
      out.weight_gradient[x.indices[k]] += residual * x.values[k];
    }
  }
  double norm_sq = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    norm_sq += weights[j] * weights[j];
    out.weight_gradient[j] += l2_lambda * weights[j];
  }
  out.loss += 0.5 * l2_lambda * norm_sq;
  return out;
}

LogisticRegression::LogisticRegression(std::vector<double> weights, double bias,
                                       TrainingOptions options,
                                       TrainingMeta meta)
    : weights_(std::move(weights)),
      bias_(bias),
      options_(options),
      meta_(std::move(meta)) {
  for (const double w : weights_) {
    if (!std::isfinite(w)) Fail(ErrorCode::kValidation, "non-finite weight");
  }
  if (!std::isfinite(bias_)) Fail(ErrorCode::kValidation, "non-finite bias");
}

LogisticRegression LogisticRegression::Train(
    std::span<const SparseVector> features, std::span<const Label> labels,
    std::size_t dimensions, const TrainingOptions& options) {
  if (features.size() != labels.size()) {
    Fail(ErrorCode::kValidation, "{} feature rows but {} labels",
         features.size(), labels.size());
  }
  if (features.empty()) {
    Fail(ErrorCode::kValidation, "cannot train on an empty set");
  }
  std::size_t positives = 0;
  for (const Label label : labels) positives += label == Label::kSponsored;
  if (positives == 0 || positives == labels.size()) {
    Fail(ErrorCode::kPrecondition,
         "training labels contain a single class; both are required");
  }
  for (const SparseVector& x : features) {
    for (const std::uint32_t index : x.indices) {
      if (index >= dimensions) {
        Fail(ErrorCode::kValidation, "feature index {} out of range {}", index,
             dimensions);
      }
    }
  }

  std::vector<double> weights(dimensions, 0.0);
  double bias = 0.0;
  TrainingMeta meta;
  LossAndGradient current = ComputeLossAndGradient(features, labels, weights,
                                                   bias, options.l2_lambda);
  meta.initial_loss = current.loss;
  meta.loss_history.push_back(current.loss);

  for (int epoch = 0; epoch < options.max_epochs; ++epoch) {
    for (std::size_t j = 0; j < dimensions; ++j) {
      weights[j] -= options.learning_rate * current.weight_gradient[j];
    }
    bias -= options.learning_rate * current.bias_gradient;
    LossAndGradient next = ComputeLossAndGradient(features, labels, weights,
                                                  bias, options.l2_lambda);
    const double delta = std::abs(next.loss - current.loss);
    current = std::move(next);
    meta.loss_history.push_back(current.loss);
    meta.epochs = epoch + 1;
    if (delta < options.tolerance) break;
  }
  meta.final_loss = current.loss;
  return LogisticRegression(std::move(weights), bias, options, std::move(meta));
}

double LogisticRegression::Logit(const SparseVector& x) const {
  return x.Dot(weights_) + bias_;
}

double LogisticRegression::Probability(const SparseVector& x) const {
  return Sigmoid(Logit(x));
}

Label LogisticRegression::Predict(const SparseVector& x) const {
  return Probability(x) >= 0.5 ? Label::kSponsored : Label::kNonSponsored;
}

}  // namespace adlabel::detector
