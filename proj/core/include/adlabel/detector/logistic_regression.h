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

#ifndef ADLABEL_DETECTOR_LOGISTIC_REGRESSION_H_
#define ADLABEL_DETECTOR_LOGISTIC_REGRESSION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "adlabel/common/label.h"
#include "adlabel/detector/vectorizer.h"

namespace adlabel::detector {

struct TrainingOptions {
  double learning_rate = 0.1;
  int max_epochs = 300;
  double l2_lambda = 1e-4;
  // Stop once an epoch changes the loss by less than this.
  double tolerance = 1e-6;
};

struct TrainingMeta {
  int epochs = 0;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  // Loss at zero init followed by the loss after each epoch.
  std::vector<double> loss_history;
};

struct LossAndGradient {
  double loss = 0.0;
  std::vector<double> weight_gradient;
  double bias_gradient = 0.0;
};

// Mean binary cross-entropy plus (l2_lambda / 2) * ||w||^2; the bias is not
// regularized. Sponsored is the positive class.
LossAndGradient ComputeLossAndGradient(std::span<const SparseVector> features,
                                       std::span<const Label> labels,
                                       std::span<const double> weights,
                                       double bias, double l2_lambda);

double Sigmoid(double z);

class LogisticRegression {
 public:
  LogisticRegression() = default;
  LogisticRegression(std::vector<double> weights, double bias,
                     TrainingOptions options, TrainingMeta meta);

  // Full-batch gradient descent from zero. kValidation when sizes disagree
  // or the input is empty; kPrecondition when only one class is present.
  static LogisticRegression Train(std::span<const SparseVector> features,
                                  std::span<const Label> labels,
                                  std::size_t dimensions,
                                  const TrainingOptions& options = {});

  double Logit(const SparseVector& x) const;
  double Probability(const SparseVector& x) const;
  // Sponsored when the probability is >= 0.5.
  Label Predict(const SparseVector& x) const;

  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  const TrainingOptions& options() const { return options_; }
  const TrainingMeta& meta() const { return meta_; }

 private:
  std::vector<double> weights_;
  double bias_ = 0.0;
  TrainingOptions options_;
  TrainingMeta meta_;
};

}  // namespace adlabel::detector

#endif  // ADLABEL_DETECTOR_LOGISTIC_REGRESSION_H_
