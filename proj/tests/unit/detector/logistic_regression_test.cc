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
#include <numeric>
#include <random>
#include <vector>

#include "adlabel/common/error.h"
#include "gtest/gtest.h"

namespace adlabel::detector {
namespace {

SparseVector Dense(std::vector<double> values) {
  SparseVector x;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) {
      x.indices.push_back(static_cast<std::uint32_t>(i));
      x.values.push_back(values[i]);
    }
  }
  return x;
}

struct Instance {
  std::vector<SparseVector> features;
  std::vector<Label> labels;
  std::vector<double> weights;
  double bias = 0.0;
  double l2 = 0.0;
};

Instance RandomInstance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rows(2, 12);
  std::uniform_int_distribution<int> dims(1, 8);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution sparse(0.6);
  Instance inst;
  const int d = dims(rng);
  for (int i = rows(rng); i > 0; --i) {
    std::vector<double> v(d);
    for (double& value : v) value = sparse(rng) ? normal(rng) : 0.0;
    inst.features.push_back(Dense(v));
    inst.labels.push_back(coin(rng) ? Label::kSponsored : Label::kNonSponsored);
  }
  inst.weights.resize(d);
  for (double& w : inst.weights) w = normal(rng);
  inst.bias = normal(rng);
  inst.l2 = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
  return inst;
}

// Central differences on the loss, independent of the analytic gradient.
std::vector<double> NumericGradient(const Instance& inst) {
  const double h = 1e-5;
  const auto loss = [&](const std::vector<double>& w, double b) {
    return ComputeLossAndGradient(inst.features, inst.labels, w, b, inst.l2)
        .loss;
  };
  std::vector<double> grad;
  std::vector<double> w = inst.weights;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double keep = w[j];
    w[j] = keep + h;
    const double up = loss(w, inst.bias);
    w[j] = keep - h;
    const double down = loss(w, inst.bias);
    w[j] = keep;
    grad.push_back((up - down) / (2 * h));
  }
  grad.push_back((loss(w, inst.bias + h) - loss(w, inst.bias - h)) / (2 * h));
  return grad;
}

TEST(LogisticRegressionTest, LossMatchesDirectFormula) {
  std::mt19937_64 rng(3);
  const Instance inst = RandomInstance(rng);
  double expected = 0.0;
  for (std::size_t i = 0; i < inst.features.size(); ++i) {
    const double z = inst.features[i].Dot(inst.weights) + inst.bias;
    const double p = 1.0 / (1.0 + std::exp(-z));
    const double y = inst.labels[i] == Label::kSponsored ? 1.0 : 0.0;
    expected -= y * std::log(p) + (1 - y) * std::log(1 - p);
  }
  expected /= static_cast<double>(inst.features.size());
  double norm_sq = 0.0;
  for (const double w : inst.weights) norm_sq += w * w;
  expected += inst.l2 / 2 * norm_sq;
  const LossAndGradient got = ComputeLossAndGradient(
      inst.features, inst.labels, inst.weights, inst.bias, inst.l2);
  EXPECT_NEAR(got.loss, expected, 1e-12);
}

TEST(LogisticRegressionPropertyTest, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = RandomInstance(rng);
    const LossAndGradient got = ComputeLossAndGradient(
        inst.features, inst.labels, inst.weights, inst.bias, inst.l2);
    std::vector<double> analytic = got.weight_gradient;
    analytic.push_back(got.bias_gradient);
    const std::vector<double> numeric = NumericGradient(inst);
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < analytic.size(); ++j) {
      diff += (analytic[j] - numeric[j]) * (analytic[j] - numeric[j]);
      scale += numeric[j] * numeric[j];
    }
    EXPECT_LE(std::sqrt(diff) / std::max(std::sqrt(scale), 1e-8), 1e-4)
        << "trial " << trial;
  }
}

TEST(LogisticRegressionTest, SeparableToySetIsFitPerfectly) {
  const std::vector<SparseVector> x = {Dense({1, 0}), Dense({0.9, 0.1}),
                                       Dense({0, 1}), Dense({0.1, 0.9})};
  const std::vector<Label> y = {Label::kSponsored, Label::kSponsored,
                                Label::kNonSponsored, Label::kNonSponsored};
  const LogisticRegression model = LogisticRegression::Train(x, y, 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(model.Predict(x[i]), y[i]);
  }
  EXPECT_LT(model.meta().final_loss, model.meta().initial_loss);
  EXPECT_NEAR(model.meta().initial_loss, std::log(2.0), 1e-12);
}

TEST(LogisticRegressionTest, SingleClassFails) {
  const std::vector<SparseVector> x = {Dense({1}), Dense({0.5})};
  const std::vector<Label> y(2, Label::kSponsored);
  try {
    LogisticRegression::Train(x, y, 1);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
}

TEST(LogisticRegressionTest, SizeMismatchAndEmptyInputFail) {
  const std::vector<SparseVector> x = {Dense({1})};
  const std::vector<Label> y = {Label::kSponsored, Label::kNonSponsored};
  EXPECT_THROW(LogisticRegression::Train(x, y, 1), Error);
  EXPECT_THROW(LogisticRegression::Train({}, {}, 1), Error);
}

TEST(LogisticRegressionTest, StrongPenaltyFitsBaseRate) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<SparseVector> x;
  std::vector<Label> y;
  for (int i = 0; i < 40; ++i) {
    std::vector<double> v = {normal(rng), normal(rng), normal(rng)};
    const double n = std::hypot(v[0], v[1], v[2]);
    for (double& value : v) value /= n;
    x.push_back(Dense(v));
    y.push_back(i % 4 == 0 ? Label::kSponsored : Label::kNonSponsored);
  }
  TrainingOptions options;
  options.l2_lambda = 10.0;
  options.max_epochs = 20000;
  options.tolerance = 1e-14;
  const LogisticRegression model = LogisticRegression::Train(x, y, 3, options);
  // With w -> 0 the optimal bias is logit of the positive rate.
  const double rate = 0.25;
  EXPECT_NEAR(model.bias(), std::log(rate / (1 - rate)), 2e-2);
  for (const double w : model.weights()) EXPECT_LT(std::abs(w), 2e-2);
}

// Property: at learning rate 0.1 on unit-norm rows every epoch lowers the
// loss (the loss is smooth with Lipschitz constant well below 20).
TEST(LogisticRegressionPropertyTest, LossIsNonIncreasing) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SparseVector> x;
    std::vector<Label> y;
    for (int i = 0; i < 30; ++i) {
      std::vector<double> v(6);
      for (double& value : v) value = normal(rng);
      const double n =
          std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
      for (double& value : v) value /= n;
      x.push_back(Dense(v));
      y.push_back(i % 2 == 0 ? Label::kSponsored : Label::kNonSponsored);
    }
    const LogisticRegression model = LogisticRegression::Train(x, y, 6);
    const auto& history = model.meta().loss_history;
    ASSERT_EQ(history.size(),
              static_cast<std::size_t>(model.meta().epochs) + 1);
    for (std::size_t e = 1; e < history.size(); ++e) {
      EXPECT_LE(history[e], history[e - 1]) << "epoch " << e;
    }
  }
}

TEST(LogisticRegressionTest, ThresholdTieIsSponsored) {
  const LogisticRegression model({0.0}, 0.0, {}, {});
  EXPECT_EQ(model.Predict(Dense({1})), Label::kSponsored);
  EXPECT_DOUBLE_EQ(model.Probability(Dense({1})), 0.5);
}

TEST(LogisticRegressionTest, RejectsNonFiniteParameters) {
  EXPECT_THROW(LogisticRegression({NAN}, 0.0, {}, {}), Error);
  EXPECT_THROW(LogisticRegression({0.0}, INFINITY, {}, {}), Error);
}

TEST(SigmoidTest, StableAtExtremes) {
  EXPECT_DOUBLE_EQ(Sigmoid(0), 0.5);
  EXPECT_NEAR(Sigmoid(800), 1.0, 1e-15);
  EXPECT_GE(Sigmoid(-800), 0.0);
  EXPECT_NEAR(Sigmoid(2) + Sigmoid(-2), 1.0, 1e-15);
}

}  // namespace
}  // namespace adlabel::detector
