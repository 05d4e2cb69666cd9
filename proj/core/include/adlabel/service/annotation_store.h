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

#ifndef ADLABEL_SERVICE_ANNOTATION_STORE_H_
#define ADLABEL_SERVICE_ANNOTATION_STORE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adlabel/corpus/corpus_io.h"
#include "adlabel/service/types.h"

namespace adlabel::service {

struct StoreOptions {
  // Empty keeps everything in memory.
  std::filesystem::path data_dir;
  // A snapshot is written and the event log truncated after this many
  // events. Zero disables automatic snapshots.
  std::size_t snapshot_every = 1000;
  // Loads the directory without touching it; mutations fail with
  // kPrecondition. Safe to use next to a running server.
  bool read_only = false;
  // Returns the timestamp recorded on projects and labels.
  std::function<std::string()> clock;
};

struct CreateProjectRequest {
  std::string annotator_id;
  Expertise expertise = Expertise::kNoExperience;
  std::string batch_id;
  Setup setup = Setup::kWithoutExplanations;
  std::uint64_t seed = 0;
};

struct ExportFilter {
  std::optional<Expertise> expertise;
  std::optional<Setup> setup;
};

struct LabelExport {
  // annotator_id,post_id,label with rater ids from RaterId().
  std::string labels_csv;
  // agreement::ReportManifest as JSON.
  std::string manifest_json;
  std::size_t rows = 0;
};

// Projects, labels and surveys for annotation batches. Mutations go to an
// append-only, fsynced event log before they are applied, so a restart
// never loses an acknowledged write. A torn final log line (crash during
// append) is discarded on open.
class AnnotationStore {
 public:
  explicit AnnotationStore(StoreOptions options = {});
  ~AnnotationStore();

  AnnotationStore(const AnnotationStore&) = delete;
  AnnotationStore& operator=(const AnnotationStore&) = delete;

  // kConflict if the batch id exists with different contents.
  void AddBatch(const corpus::BatchDocument& batch);
  // Model predictions CSV used by the agreement report. Replaces any
  // previous set. kNotFound for an unknown batch.
  void SetPredictions(std::string_view batch_id, std::string predictions_csv);

  // kNotFound for an unknown batch, kConflict for a repeated
  // (annotator, batch, setup) or an annotator id reused with a different
  // expertise, kPrecondition for an explanation setup on a batch with
  // unexplained items.
  Project CreateProject(const CreateProjectRequest& request);

  // nullopt once every item is labelled.
  std::optional<ItemView> NextItem(std::string_view project_id) const;

  // Last write wins. Items are served in order: a post may be labelled if
  // it is the current next item or already labelled. kValidation otherwise
  // or when the post is outside the batch.
  LabelRecord SubmitLabel(std::string_view project_id, std::string_view post_id,
                          Label label);

  AttentionReport Attention(std::string_view project_id) const;

  // Only for explanation-setup projects; once per project.
  void SubmitSurvey(const SurveyResponse& response);

  LabelExport Export(std::string_view batch_id,
                     const ExportFilter& filter = {}) const;

  // Agreement report over the batch's export, with the model bias probe
  // when predictions are attached. `text` selects the table rendering.
  std::string Report(std::string_view batch_id, bool text) const;

  Project GetProject(std::string_view project_id) const;
  std::vector<Project> Projects() const;
  std::vector<Annotator> Annotators() const;
  std::vector<LabelRecord> Labels(std::string_view project_id) const;
  std::optional<SurveyResponse> Survey(std::string_view project_id) const;
  std::vector<std::string> BatchIds() const;

  // Writes a snapshot and truncates the event log.
  void Snapshot();

 private:
  struct State;
  class Log;

  void Commit(const std::string& event);
  void ApplyEvent(std::string_view line);
  void Load();
  void SnapshotLocked();
  std::string Now() const;

  StoreOptions options_;
  mutable std::shared_mutex mutex_;
  std::unique_ptr<State> state_;
  std::unique_ptr<Log> log_;
};

// "p-" followed by 16 hex digits of a digest of the triple.
std::string MakeProjectId(std::string_view annotator_id, Setup setup,
                          std::string_view batch_id);

// Deterministic permutation of `items` for one project.
std::vector<std::string> ProjectOrder(std::span<const std::string> items,
                                      std::uint64_t seed,
                                      std::string_view project_id);

std::string FormatExplanationBlock(std::string_view explanation);

}  // namespace adlabel::service

#endif  // ADLABEL_SERVICE_ANNOTATION_STORE_H_
