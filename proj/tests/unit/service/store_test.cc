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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <set>

#include "adlabel/agreement/label_matrix.h"
#include "adlabel/agreement/metrics.h"
#include "adlabel/agreement/report.h"
#include "adlabel/common/error.h"
#include "adlabel/common/file_util.h"
#include "adlabel/common/rng.h"
#include "adlabel/service/annotation_store.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "support/simulation.h"

namespace adlabel::service {
namespace {

using testing::MakeBatch;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

std::function<std::string()> FixedClock() {
  auto tick = std::make_shared<int>(0);
  return [tick] { return fmt::format("t{:06}", ++*tick); };
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            fmt::format("adlabel-store-{}-{}", ::getpid(), counter_++);
    std::filesystem::remove_all(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

CreateProjectRequest Request(std::string annotator, Setup setup,
                             std::uint64_t seed = 1) {
  return {std::move(annotator), Expertise::kSomeExperience, "b1", setup, seed};
}

TEST(ProjectTest, StudyRosterYieldsFifteenProjects) {
  AnnotationStore store;
  const auto result =
      testing::RunStudy(store, MakeBatch("b1", 200, 30, true), 11);
  EXPECT_EQ(result.projects.size(), 15u);
  EXPECT_EQ(store.Annotators().size(), 11u);
  std::size_t both = 0;
  for (const Annotator& a : store.Annotators()) both += a.setups.size() == 2;
  EXPECT_EQ(both, 4u);
}

TEST(ProjectTest, OrderIsSeededPermutation) {
  AnnotationStore a;
  AnnotationStore b;
  a.AddBatch(MakeBatch("b1", 200, 30, true));
  b.AddBatch(MakeBatch("b1", 200, 30, true));
  const Project pa = a.CreateProject(Request("x", Setup::kWithoutExplanations));
  const Project pb = b.CreateProject(Request("x", Setup::kWithoutExplanations));
  EXPECT_EQ(pa.item_order, pb.item_order);
  EXPECT_EQ(pa.project_id, pb.project_id);

  // Same annotator and seed in the other setup gets its own order.
  const Project other = a.CreateProject(Request("x", Setup::kWithExplanations));
  EXPECT_NE(other.item_order, pa.item_order);

  auto sorted = pa.item_order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> ids;
  for (const auto& item : MakeBatch("b1", 200, 30, true).items) {
    ids.push_back(item.post_id);
  }
  EXPECT_EQ(sorted, ids);
}

TEST(ProjectTest, Errors) {
  AnnotationStore store;
  store.AddBatch(MakeBatch("b1", 10, 2, false));
  store.CreateProject(Request("x", Setup::kWithoutExplanations));
  EXPECT_EQ(
      CodeOf([&] {
        store.CreateProject(Request("x", Setup::kWithoutExplanations, 99));
      }),
      ErrorCode::kConflict);
  EXPECT_EQ(CodeOf([&] {
              store.CreateProject({"y", Expertise::kLegalExpert, "nope",
                                   Setup::kWithoutExplanations, 1});
            }),
            ErrorCode::kNotFound);
  EXPECT_EQ(CodeOf([&] {
              store.CreateProject(Request("y", Setup::kWithExplanations));
            }),
            ErrorCode::kPrecondition);
  EXPECT_EQ(CodeOf([&] {
              store.CreateProject({"x", Expertise::kLegalExpert, "b1",
                                   Setup::kWithExplanations, 1});
            }),
            ErrorCode::kConflict);
  EXPECT_EQ(CodeOf([&] {
              store.CreateProject(Request("a@b", Setup::kWithoutExplanations));
            }),
            ErrorCode::kValidation);
  EXPECT_EQ(CodeOf([&] { store.AddBatch(MakeBatch("b1", 11, 2, false)); }),
            ErrorCode::kConflict);
  // Re-adding identical contents is a no-op.
  store.AddBatch(MakeBatch("b1", 10, 2, false));
}

TEST(NextItemTest, FreshAndDone) {
  AnnotationStore store;
  store.AddBatch(MakeBatch("b1", 200, 30, true));
  const Project p =
      store.CreateProject(Request("x", Setup::kWithoutExplanations));
  auto view = store.NextItem(p.project_id);
  ASSERT_TRUE(view.has_value());
  EXPECT_EQ(view->position, 1u);
  EXPECT_EQ(view->total, 200u);
  EXPECT_FALSE(view->explanation_block.has_value());
  EXPECT_EQ(view->post_id, p.item_order[0]);
  for (const std::string& id : p.item_order) {
    store.SubmitLabel(p.project_id, id, Label::kSponsored);
  }
  EXPECT_FALSE(store.NextItem(p.project_id).has_value());
  EXPECT_EQ(CodeOf([&] { store.NextItem("p-missing"); }), ErrorCode::kNotFound);
}

TEST(NextItemTest, ExplanationBlockIsDelimitedWithoutLabelLine) {
  AnnotationStore store;
  store.AddBatch(MakeBatch("b1", 20, 3, true));
  const Project with =
      store.CreateProject(Request("x", Setup::kWithExplanations));
  const Project without =
      store.CreateProject(Request("x", Setup::kWithoutExplanations));
  while (const auto view = store.NextItem(with.project_id)) {
    ASSERT_TRUE(view->explanation_block.has_value());
    const std::string& block = *view->explanation_block;
    EXPECT_EQ(block.find(kExplanationOpen), 0u);
    EXPECT_NE(block.find(kExplanationClose), std::string::npos);
    EXPECT_EQ(block.find("Likely"), std::string::npos) << block;
    EXPECT_NE(block.find("Key indicators:"), std::string::npos);
    store.SubmitLabel(with.project_id, view->post_id, Label::kNonSponsored);
  }
  while (const auto view = store.NextItem(without.project_id)) {
    EXPECT_FALSE(view->explanation_block.has_value());
    EXPECT_EQ(view->caption.find(kExplanationOpen), std::string::npos);
    store.SubmitLabel(without.project_id, view->post_id, Label::kNonSponsored);
  }
}

// Every item is served exactly once, in order, whatever the seed.
TEST(NextItemTest, ServesEachItemOnceProperty) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    AnnotationStore store;
    const std::size_t n = 5 + seed * 3;
    store.AddBatch(MakeBatch("b1", n, 1, false));
    const Project p =
        store.CreateProject(Request("x", Setup::kWithoutExplanations, seed));
    std::vector<std::string> served;
    StableRng rng(seed);
    while (const auto view = store.NextItem(p.project_id)) {
      ASSERT_EQ(view->position, served.size() + 1);
      served.push_back(view->post_id);
      store.SubmitLabel(
          p.project_id, view->post_id,
          rng.UniformBelow(2) ? Label::kSponsored : Label::kNonSponsored);
      // Random revisions of earlier items never change what comes next.
      if (rng.UniformBelow(3) == 0) {
        store.SubmitLabel(p.project_id, served[rng.UniformBelow(served.size())],
                          Label::kSponsored);
      }
    }
    EXPECT_EQ(served, p.item_order);
    EXPECT_EQ(std::set<std::string>(served.begin(), served.end()).size(), n);
  }
}

TEST(SubmitLabelTest, LastWriteWins) {
  AnnotationStore store({.clock = FixedClock()});
  store.AddBatch(MakeBatch("b1", 5, 1, false));
  const Project p =
      store.CreateProject(Request("x", Setup::kWithoutExplanations));
  const std::string first = p.item_order[0];
  const LabelRecord a =
      store.SubmitLabel(p.project_id, first, Label::kSponsored);
  const LabelRecord b =
      store.SubmitLabel(p.project_id, first, Label::kNonSponsored);
  EXPECT_NE(a.labeled_at, b.labeled_at);
  const auto labels = store.Labels(p.project_id);
  ASSERT_EQ(labels.size(), 1u);
  EXPECT_EQ(labels[0].label, Label::kNonSponsored);
  EXPECT_EQ(labels[0].labeled_at, b.labeled_at);
  EXPECT_EQ(store.NextItem(p.project_id)->position, 2u);
}

TEST(SubmitLabelTest, Errors) {
  AnnotationStore store;
  store.AddBatch(MakeBatch("b1", 5, 1, false));
  store.AddBatch(MakeBatch("b2", 5, 1, false, 8));
  const Project p =
      store.CreateProject(Request("x", Setup::kWithoutExplanations));
  EXPECT_EQ(CodeOf([&] {
              store.SubmitLabel(p.project_id, "zzz", Label::kSponsored);
            }),
            ErrorCode::kValidation);
  EXPECT_EQ(CodeOf([&] {
              store.SubmitLabel(p.project_id, p.item_order[3],
                                Label::kSponsored);
            }),
            ErrorCode::kValidation);
  EXPECT_EQ(CodeOf([&] {
              store.SubmitLabel("p-none", p.item_order[0], Label::kSponsored);
            }),
            ErrorCode::kNotFound);
}

TEST(SubmitLabelTest, LabelsAreNotSharedAcrossProjects) {
  AnnotationStore store;
  store.AddBatch(MakeBatch("b1", 5, 1, false));
  const Project a =
      store.CreateProject(Request("x", Setup::kWithoutExplanations));
  const Project b =
      store.CreateProject(Request("y", Setup::kWithoutExplanations));
  store.SubmitLabel(a.project_id, a.item_order[0], Label::kSponsored);
  EXPECT_TRUE(store.Labels(b.project_id).empty());
  EXPECT_EQ(store.NextItem(b.project_id)->position, 1u);
}

TEST(AttentionTest, Accuracy) {
  AnnotationStore store;
  store.AddBatch(MakeBatch("b1", 200, 30, false));
  const Project p =
      store.CreateProject(Request("x", Setup::kWithoutExplanations));
  AttentionReport r = store.Attention(p.project_id);
  EXPECT_EQ(r.disclosed_total, 30u);
  EXPECT_EQ(r.disclosed_seen, 0u);
  EXPECT_FALSE(r.accuracy.has_value());

  std::size_t disclosed_seen = 0;
  for (const std::string& id : p.item_order) {
    const bool disclosed = id < "b030";
    // Miss the first three disclosed items.
    const bool miss = disclosed && disclosed_seen++ < 3;
    store.SubmitLabel(
        p.project_id, id,
        disclosed && !miss ? Label::kSponsored : Label::kNonSponsored);
  }
  r = store.Attention(p.project_id);
  EXPECT_EQ(r.disclosed_seen, 30u);
  EXPECT_EQ(r.disclosed_correct, 27u);
  EXPECT_DOUBLE_EQ(*r.accuracy, 0.9);
}

TEST(AttentionTest, AllCorrect) {
  AnnotationStore store;
  store.AddBatch(MakeBatch("b1", 200, 30, false));
  const Project p =
      store.CreateProject(Request("x", Setup::kWithoutExplanations));
  for (const std::string& id : p.item_order) {
    store.SubmitLabel(p.project_id, id, Label::kSponsored);
  }
  EXPECT_DOUBLE_EQ(*store.Attention(p.project_id).accuracy, 1.0);
}

SurveyResponse ValidSurvey(std::string project_id) {
  SurveyResponse r;
  r.project_id = std::move(project_id);
  r.q1_helpful = 4;
  r.q2_accurate = 3;
  r.q3_agree_freq = 5;
  r.q4_confidence = true;
  r.q5_aspects = {Aspect::kReasoning, Aspect::kSpecificWords};
  r.q6_understanding = "It pointed at the tagged brand.";
  r.q7_improvements = "Shorter text.";
  return r;
}

TEST(SurveyTest, StoredOnce) {
  AnnotationStore store;
  store.AddBatch(MakeBatch("b1", 5, 1, true));
  const Project p = store.CreateProject(Request("x", Setup::kWithExplanations));
  store.SubmitSurvey(ValidSurvey(p.project_id));
  EXPECT_EQ(store.Survey(p.project_id)->q3_agree_freq, 5);
  EXPECT_EQ(CodeOf([&] { store.SubmitSurvey(ValidSurvey(p.project_id)); }),
            ErrorCode::kConflict);
}

TEST(SurveyTest, Validation) {
  AnnotationStore store;
  store.AddBatch(MakeBatch("b1", 5, 1, true));
  const Project with =
      store.CreateProject(Request("x", Setup::kWithExplanations));
  const Project without =
      store.CreateProject(Request("x", Setup::kWithoutExplanations));

  auto expect_invalid = [&](SurveyResponse r) {
    EXPECT_EQ(CodeOf([&] { store.SubmitSurvey(r); }), ErrorCode::kValidation);
  };
  SurveyResponse r = ValidSurvey(with.project_id);
  r.q1_helpful = 6;
  expect_invalid(r);
  r = ValidSurvey(with.project_id);
  r.q2_accurate = 0;
  expect_invalid(r);
  r = ValidSurvey(with.project_id);
  r.q5_aspects = {Aspect::kNone, Aspect::kReasoning};
  expect_invalid(r);
  r = ValidSurvey(with.project_id);
  r.q5_aspects = {Aspect::kOther};
  expect_invalid(r);
  r.q5_other = "tone";
  store.SubmitSurvey(r);
  expect_invalid(ValidSurvey(without.project_id));
}

TEST(ExportTest, FullStudy) {
  AnnotationStore store;
  const auto batch = MakeBatch("b1", 200, 30, true);
  testing::RunStudy(store, batch, 3);
  const LabelExport all = store.Export("b1");
  EXPECT_EQ(all.rows, 3000u);
  const auto entries = agreement::ParseLabelFile(all.labels_csv);
  EXPECT_EQ(entries.size(), 3000u);
  EXPECT_EQ(entries.front().annotator_id, "l1@without_explanations");

  const LabelExport legal = store.Export("b1", {Expertise::kLegalExpert, {}});
  EXPECT_EQ(legal.rows, 800u);
  for (const auto& e : agreement::ParseLabelFile(legal.labels_csv)) {
    EXPECT_EQ(e.annotator_id[0], 'l');
  }
  EXPECT_EQ(store.Export("b1").labels_csv, all.labels_csv);

  const auto manifest = agreement::ParseManifest(all.manifest_json);
  EXPECT_EQ(manifest.items.size(), 200u);
  EXPECT_EQ(manifest.disclosed_ids.size(), 30u);
  std::map<std::string, std::size_t> sizes;
  for (const auto& g : manifest.groups) sizes[g.group_id] = g.annotators.size();
  EXPECT_EQ(sizes["without_explanations"], 7u);
  EXPECT_EQ(sizes["with_explanations"], 8u);
  EXPECT_EQ(sizes["without_explanations/legal_experts"], 2u);
  EXPECT_EQ(sizes["with_explanations/non_experts"], 6u);
  EXPECT_EQ(sizes["without_explanations/both_setups"], 4u);
  EXPECT_EQ(sizes["with_explanations/both_setups"], 4u);
  EXPECT_EQ(manifest.comparisons.size(), 4u);
}

TEST(ExportTest, EmptyBatchIsHeaderOnly) {
  AnnotationStore store;
  store.AddBatch(MakeBatch("empty", 0, 0, false));
  const LabelExport out = store.Export("empty");
  EXPECT_EQ(out.labels_csv, "annotator_id,post_id,label\n");
  EXPECT_EQ(out.rows, 0u);
}

// The report served from an export equals metrics computed directly on the
// in-memory labels.
TEST(ReportTest, ExportReplayMatchesDirectMetrics) {
  AnnotationStore store;
  const auto batch = MakeBatch("b1", 200, 30, true);
  const auto sim = testing::RunStudy(store, batch, 5);

  std::vector<std::string> items;
  std::vector<std::string> disclosed;
  for (const auto& item : batch.items) {
    items.push_back(item.post_id);
    if (item.disclosed) disclosed.push_back(item.post_id);
  }
  std::vector<std::string> with;
  std::vector<std::string> without;
  std::vector<agreement::LabelEntry> entries;
  for (const Project& p : sim.projects) {
    (p.setup == Setup::kWithExplanations ? with : without)
        .push_back(RaterId(p));
    for (const LabelRecord& r : store.Labels(p.project_id)) {
      entries.push_back({RaterId(p), r.post_id, r.label});
    }
  }
  const auto matrix = agreement::LabelMatrix::FromEntries(entries, items);
  const auto w = matrix.RestrictAnnotators(with);
  const auto json = nlohmann::json::parse(store.Report("b1", false));
  const auto& group = json["groups"][1];
  ASSERT_EQ(group["group_id"], "with_explanations");
  EXPECT_DOUBLE_EQ(group["alpha_pct"].get<double>(),
                   100 * agreement::KrippendorffAlpha(w));
  EXPECT_DOUBLE_EQ(group["abs_pct"].get<double>(),
                   100 * agreement::AbsoluteAgreement(w));
  EXPECT_DOUBLE_EQ(group["one_disag_pct"].get<double>(),
                   100 * agreement::AtMostOneDisagreement(w));
  EXPECT_DOUBLE_EQ(group["disclosed_acc_pct"].get<double>(),
                   100 * agreement::DisclosedAccuracy(w, disclosed));
  EXPECT_DOUBLE_EQ(group["bias"]["model_majority_agreement_pct"].get<double>(),
                   agreement::ModelAgreementMajority(w, sim.predictions)
                       .model_majority_agreement_pct);
  EXPECT_NE(store.Report("b1", true).find("with_explanations"),
            std::string::npos);
}

TEST(PersistenceTest, RestartKeepsAcknowledgedWrites) {
  TempDir dir;
  std::string project_id;
  std::vector<LabelRecord> before;
  {
    AnnotationStore store({.data_dir = dir.path(), .clock = FixedClock()});
    store.AddBatch(MakeBatch("b1", 20, 3, true));
    const Project p =
        store.CreateProject(Request("x", Setup::kWithExplanations));
    project_id = p.project_id;
    for (int i = 0; i < 12; ++i) {
      store.SubmitLabel(p.project_id, p.item_order[i],
                        i % 3 ? Label::kSponsored : Label::kNonSponsored);
    }
    store.SubmitLabel(p.project_id, p.item_order[0], Label::kSponsored);
    store.SubmitSurvey(ValidSurvey(p.project_id));
    before = store.Labels(p.project_id);
  }
  AnnotationStore reopened({.data_dir = dir.path()});
  const auto after = reopened.Labels(project_id);
  ASSERT_EQ(after.size(), before.size());
  for (std::size_t i = 0; i < after.size(); ++i) {
    EXPECT_EQ(after[i].post_id, before[i].post_id);
    EXPECT_EQ(after[i].label, before[i].label);
    EXPECT_EQ(after[i].labeled_at, before[i].labeled_at);
  }
  EXPECT_EQ(after[0].label, Label::kSponsored);
  EXPECT_TRUE(reopened.Survey(project_id).has_value());
  EXPECT_EQ(reopened.NextItem(project_id)->position, 13u);
}

TEST(PersistenceTest, SnapshotsAndLaterEventsReplay) {
  TempDir dir;
  std::string project_id;
  std::string export_before;
  {
    AnnotationStore store(
        {.data_dir = dir.path(), .snapshot_every = 7, .clock = FixedClock()});
    store.AddBatch(MakeBatch("b1", 30, 3, false));
    const Project p =
        store.CreateProject(Request("x", Setup::kWithoutExplanations));
    project_id = p.project_id;
    for (int i = 0; i < 25; ++i) {
      store.SubmitLabel(p.project_id, p.item_order[i], Label::kSponsored);
    }
    export_before = store.Export("b1").labels_csv;
  }
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "snapshot.json"));
  AnnotationStore reopened({.data_dir = dir.path(), .snapshot_every = 7});
  EXPECT_EQ(reopened.Export("b1").labels_csv, export_before);
  EXPECT_EQ(reopened.NextItem(project_id)->position, 26u);
  // Writes continue after reopening.
  const Project p = reopened.GetProject(project_id);
  reopened.SubmitLabel(project_id, p.item_order[25], Label::kNonSponsored);
  AnnotationStore again({.data_dir = dir.path()});
  EXPECT_EQ(again.Labels(project_id).size(), 26u);
}

TEST(PersistenceTest, TornTailIsDiscarded) {
  TempDir dir;
  std::string project_id;
  {
    AnnotationStore store({.data_dir = dir.path(), .snapshot_every = 0});
    store.AddBatch(MakeBatch("b1", 10, 1, false));
    const Project p =
        store.CreateProject(Request("x", Setup::kWithoutExplanations));
    project_id = p.project_id;
    store.SubmitLabel(p.project_id, p.item_order[0], Label::kSponsored);
  }
  {
    std::ofstream log(dir.path() / "events.jsonl", std::ios::app);
    log << R"({"seq":99,"type":"label","project_id":")" << project_id;
  }
  {
    AnnotationStore reopened({.data_dir = dir.path(), .snapshot_every = 0});
    EXPECT_EQ(reopened.Labels(project_id).size(), 1u);
    const Project p = reopened.GetProject(project_id);
    reopened.SubmitLabel(project_id, p.item_order[1], Label::kSponsored);
  }
  AnnotationStore again({.data_dir = dir.path()});
  EXPECT_EQ(again.Labels(project_id).size(), 2u);
}

TEST(PersistenceTest, ReadOnlyLeavesFilesAlone) {
  TempDir dir;
  {
    AnnotationStore store({.data_dir = dir.path(), .snapshot_every = 0});
    store.AddBatch(MakeBatch("b1", 10, 1, false));
  }
  {
    std::ofstream log(dir.path() / "events.jsonl", std::ios::app);
    log << R"({"seq":7,"ty)";
  }
  const std::string before = ReadFile(dir.path() / "events.jsonl");
  AnnotationStore reader({.data_dir = dir.path(), .read_only = true});
  EXPECT_EQ(reader.BatchIds(), std::vector<std::string>{"b1"});
  EXPECT_EQ(CodeOf([&] { reader.AddBatch(MakeBatch("b2", 3, 1, false)); }),
            ErrorCode::kPrecondition);
  EXPECT_EQ(ReadFile(dir.path() / "events.jsonl"), before);
}

TEST(PersistenceTest, CorruptMiddleRecordIsAnError) {
  TempDir dir;
  {
    AnnotationStore store({.data_dir = dir.path(), .snapshot_every = 0});
    store.AddBatch(MakeBatch("b1", 10, 1, false));
  }
  const std::string good = ReadFile(dir.path() / "events.jsonl");
  WriteFileAtomic(dir.path() / "events.jsonl", "{garbage\n" + good);
  EXPECT_EQ(CodeOf([&] { AnnotationStore s({.data_dir = dir.path()}); }),
            ErrorCode::kParse);
}

}  // namespace
}  // namespace adlabel::service
