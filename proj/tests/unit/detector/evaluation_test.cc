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

#include "adlabel/detector/evaluation.h"

#include <random>
#include <string>
#include <vector>

#include "adlabel/common/error.h"
#include "adlabel/detector/predictions.h"
#include "gtest/gtest.h"

namespace adlabel::detector {
namespace {

constexpr Label kS = Label::kSponsored;
constexpr Label kN = Label::kNonSponsored;

struct Case {
  std::vector<Prediction> predictions;
  std::vector<TruthItem> truth;
};

Case Build(const std::vector<std::pair<Label, bool>>& rows,
           const std::vector<bool>& disclosed = {}) {
  Case c;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string id = "p" + std::to_string(i);
    c.predictions.push_back({id, rows[i].first, std::nullopt, "m"});
    c.truth.push_back(
        {id, rows[i].second, i < disclosed.size() ? disclosed[i] : true});
  }
  return c;
}

// Textbook F1 from precision and recall, in percent.
double F1FromPrecisionRecall(double tp, double fp, double fn) {
  const double precision = tp / (tp + fp);
  const double recall = tp / (tp + fn);
  return 100.0 * 2 * precision * recall / (precision + recall);
}

TEST(EvaluateTest, MacroOfTableValues) {
  EXPECT_NEAR(MacroF1(76.09, 63.93), 70.01, 0.005);
}

TEST(EvaluateTest, AllCorrect) {
  const Case c =
      Build({{kS, true}, {kN, false}, {kS, true}}, {true, true, false});
  const EvalReport r = Evaluate(c.predictions, c.truth);
  EXPECT_DOUBLE_EQ(r.pos_f1, 100.0);
  EXPECT_DOUBLE_EQ(r.neg_f1, 100.0);
  EXPECT_DOUBLE_EQ(r.macro_f1, 100.0);
  ASSERT_TRUE(r.undisclosed_acc.has_value());
  EXPECT_DOUBLE_EQ(*r.undisclosed_acc, 100.0);
}

TEST(EvaluateTest, OneOfEachCell) {
  const Case c = Build({{kS, true}, {kS, false}, {kN, true}, {kN, false}});
  const EvalReport r = Evaluate(c.predictions, c.truth);
  EXPECT_DOUBLE_EQ(r.pos_f1, 50.0);
  EXPECT_DOUBLE_EQ(r.neg_f1, 50.0);
  EXPECT_EQ(r.true_positives, 1u);
  EXPECT_EQ(r.false_positives, 1u);
  EXPECT_EQ(r.false_negatives, 1u);
  EXPECT_EQ(r.true_negatives, 1u);
}

TEST(EvaluateTest, EightItemFixture) {
  // TP=3 FP=1 FN=2 TN=2.
  const Case c = Build({{kS, true},
                        {kS, true},
                        {kS, true},
                        {kS, false},
                        {kN, true},
                        {kN, true},
                        {kN, false},
                        {kN, false}},
                       {true, false, true, true, false, false, true, true});
  const EvalReport r = Evaluate(c.predictions, c.truth);
  EXPECT_DOUBLE_EQ(r.pos_f1, F1FromPrecisionRecall(3, 1, 2));
  EXPECT_DOUBLE_EQ(r.neg_f1, F1FromPrecisionRecall(2, 2, 1));
  EXPECT_NEAR(r.pos_f1, 66.6666667, 1e-6);
  EXPECT_NEAR(r.neg_f1, 57.1428571, 1e-6);
  // Undisclosed ads: p1 (hit), p4 and p5 (missed).
  EXPECT_EQ(r.undisclosed_total, 3u);
  EXPECT_NEAR(*r.undisclosed_acc, 100.0 / 3, 1e-12);
}

TEST(EvaluateTest, NoUndisclosedAdsLeavesMetricEmpty) {
  const Case c = Build({{kS, true}, {kN, false}});
  EXPECT_FALSE(Evaluate(c.predictions, c.truth).undisclosed_acc.has_value());
}

TEST(EvaluateTest, MissingPredictionNamesId) {
  Case c = Build({{kS, true}, {kN, false}});
  c.truth.push_back({"lost-42", true, true});
  try {
    Evaluate(c.predictions, c.truth);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
    EXPECT_NE(std::string(e.what()).find("lost-42"), std::string::npos);
  }
}

// Properties over random confusion sets.
TEST(EvaluatePropertyTest, MacroIsMeanAndSwapSwapsClasses) {
  std::mt19937_64 rng(23);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> size(1, 40);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<Label, bool>> rows;
    for (int i = size(rng); i > 0; --i) {
      rows.push_back({coin(rng) ? kS : kN, coin(rng)});
    }
    const Case c = Build(rows);
    const EvalReport r = Evaluate(c.predictions, c.truth);
    EXPECT_EQ(r.macro_f1, (r.pos_f1 + r.neg_f1) / 2);

    std::vector<std::pair<Label, bool>> swapped;
    for (const auto& [label, truth] : rows) {
      swapped.push_back({Opposite(label), !truth});
    }
    const Case s = Build(swapped);
    const EvalReport rs = Evaluate(s.predictions, s.truth);
    EXPECT_DOUBLE_EQ(rs.pos_f1, r.neg_f1);
    EXPECT_DOUBLE_EQ(rs.neg_f1, r.pos_f1);
  }
}

TEST(PredictionsTest, ParsesRows) {
  const auto preds = ParsePredictions(
      "post_id,label,probability,model_id\n"
      "a,Sponsored,0.9,bert\n"
      "b,not sponsored,,bert\n");
  ASSERT_EQ(preds.size(), 2u);
  EXPECT_EQ(preds[0].label, kS);
  EXPECT_DOUBLE_EQ(*preds[0].probability, 0.9);
  EXPECT_EQ(preds[1].label, kN);
  EXPECT_FALSE(preds[1].probability.has_value());
  EXPECT_EQ(preds[1].model_id, "bert");
}

TEST(PredictionsTest, ProbabilityColumnIsOptional) {
  const auto preds =
      ParsePredictions("model_id,post_id,label\nllm,x,Sponsored\n");
  ASSERT_EQ(preds.size(), 1u);
  EXPECT_EQ(preds[0].post_id, "x");
}

TEST(PredictionsTest, UnknownLabelIsParseError) {
  try {
    ParsePredictions("post_id,label,probability,model_id\na,maybe,,m\n");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(PredictionsTest, DuplicateIdAndModelConflicts) {
  try {
    ParsePredictions(
        "post_id,label,probability,model_id\n"
        "a,Sponsored,,m\na,Sponsored,,other\na,NonSponsored,,m\n");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConflict);
  }
}

TEST(PredictionsTest, RejectsBadProbability) {
  EXPECT_THROW(ParsePredictions(
                   "post_id,label,probability,model_id\na,Sponsored,1.5,m\n"),
               Error);
  EXPECT_THROW(
      ParsePredictions("post_id,label,probability,model_id\na,Sponsored,x,m\n"),
      Error);
}

TEST(PredictionsTest, FormatRoundTrips) {
  const std::vector<Prediction> preds = {{"a", kS, 0.75, "m"},
                                         {"b,c", kN, std::nullopt, "m"}};
  const std::string text = FormatPredictions(preds);
  EXPECT_EQ(text,
            "post_id,label,probability,model_id\n"
            "a,Sponsored,0.750000,m\n"
            "\"b,c\",NonSponsored,,m\n");
  const auto back = ParsePredictions(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].post_id, "b,c");
  EXPECT_DOUBLE_EQ(*back[0].probability, 0.75);
}

}  // namespace
}  // namespace adlabel::detector
