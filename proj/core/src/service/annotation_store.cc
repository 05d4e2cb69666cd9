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

#include "adlabel/service/annotation_store.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <mutex>
#include <set>
#include <utility>

#include "adlabel/agreement/label_matrix.h"
#include "adlabel/agreement/report.h"
#include "adlabel/common/digest.h"
#include "adlabel/common/error.h"
#include "adlabel/common/file_util.h"
#include "adlabel/common/rng.h"
#include "adlabel/common/text.h"
#include "adlabel/explainer/explanation.h"
#include "codec.h"

namespace adlabel::service {

using nlohmann::json;

namespace {

constexpr std::string_view kLogName = "events.jsonl";
constexpr std::string_view kSnapshotName = "snapshot.json";

std::string UtcNow() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t secs = std::chrono::system_clock::to_time_t(now);
  const auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                          now.time_since_epoch())
                          .count() %
                      1000;
  std::tm tm{};
  ::gmtime_r(&secs, &tm);
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}.{:03}Z",
                     tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                     tm.tm_min, tm.tm_sec, millis);
}

struct BatchEntry {
  corpus::BatchDocument doc;
  std::map<std::string, std::size_t, std::less<>> index;
};

}  // namespace

struct AnnotationStore::State {
  std::uint64_t seq = 0;
  std::size_t since_snapshot = 0;
  std::map<std::string, BatchEntry, std::less<>> batches;
  std::map<std::string, std::string, std::less<>> predictions;
  std::map<std::string, Annotator, std::less<>> annotators;
  std::map<std::string, Project, std::less<>> projects;
  std::map<std::string, std::map<std::string, LabelRecord, std::less<>>,
           std::less<>>
      labels;
  std::map<std::string, SurveyResponse, std::less<>> surveys;

  const Project& FindProject(std::string_view id) const {
    const auto it = projects.find(id);
    if (it == projects.end()) {
      Fail(ErrorCode::kNotFound, "unknown project \"{}\"", id);
    }
    return it->second;
  }

  const BatchEntry& FindBatch(std::string_view id) const {
    const auto it = batches.find(id);
    if (it == batches.end()) {
      Fail(ErrorCode::kNotFound, "unknown batch \"{}\"", id);
    }
    return it->second;
  }

  // Index into item_order of the first unlabelled item, or size().
  std::size_t Cursor(const Project& p) const {
    const auto it = labels.find(p.project_id);
    if (it == labels.end()) return 0;
    std::size_t i = 0;
    while (i < p.item_order.size() && it->second.contains(p.item_order[i])) {
      ++i;
    }
    return i;
  }
};

// Append-only file with an fsync per record.
class AnnotationStore::Log {
 public:
  explicit Log(std::filesystem::path path) : path_(std::move(path)) {
    fd_ = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
    if (fd_ < 0) {
      Fail(ErrorCode::kIo, "cannot open {}: {}", path_.string(),
           std::strerror(errno));
    }
  }
  ~Log() { ::close(fd_); }

  void Append(std::string_view record) {
    std::string line(record);
    line += '\n';
    std::size_t written = 0;
    while (written < line.size()) {
      const ssize_t n =
          ::write(fd_, line.data() + written, line.size() - written);
      if (n < 0) {
        if (errno == EINTR) continue;
        Fail(ErrorCode::kIo, "append to {} failed: {}", path_.string(),
             std::strerror(errno));
      }
      written += static_cast<std::size_t>(n);
    }
    Sync();
  }

  void Truncate(off_t size) {
    if (::ftruncate(fd_, size) != 0) {
      Fail(ErrorCode::kIo, "truncate {} failed: {}", path_.string(),
           std::strerror(errno));
    }
    Sync();
  }

 private:
  void Sync() {
    if (::fsync(fd_) != 0) {
      Fail(ErrorCode::kIo, "fsync {} failed: {}", path_.string(),
           std::strerror(errno));
    }
  }

  std::filesystem::path path_;
  int fd_ = -1;
};

std::string MakeProjectId(std::string_view annotator_id, Setup setup,
                          std::string_view batch_id) {
  const std::string key =
      fmt::format("{}:{}|{}|{}:{}", annotator_id.size(), annotator_id,
                  SetupName(setup), batch_id.size(), batch_id);
  return "p-" + Sha256Hex(key).substr(0, 16);
}

std::vector<std::string> ProjectOrder(std::span<const std::string> items,
                                      std::uint64_t seed,
                                      std::string_view project_id) {
  std::vector<std::string> order(items.begin(), items.end());
  StableRng rng(DeriveSeed(seed, project_id));
  rng.Shuffle(order);
  return order;
}

std::string FormatExplanationBlock(std::string_view explanation) {
  std::string body = explainer::StripLabelLines(explanation);
  if (body.empty()) body = "(no explanation text)";
  return fmt::format("{}\n{}\n{}", kExplanationOpen, body, kExplanationClose);
}

AnnotationStore::AnnotationStore(StoreOptions options)
    : options_(std::move(options)), state_(std::make_unique<State>()) {
  if (!options_.clock) options_.clock = UtcNow;
  if (!options_.data_dir.empty()) {
    std::error_code ec;
    if (!options_.read_only) {
      std::filesystem::create_directories(options_.data_dir, ec);
    }
    if (ec) {
      Fail(ErrorCode::kIo, "cannot create {}: {}", options_.data_dir.string(),
           ec.message());
    }
    Load();
    if (!options_.read_only) {
      log_ = std::make_unique<Log>(options_.data_dir / kLogName);
    }
  }
}

AnnotationStore::~AnnotationStore() = default;

std::string AnnotationStore::Now() const { return options_.clock(); }

void AnnotationStore::Load() {
  const auto snapshot_path = options_.data_dir / kSnapshotName;
  if (std::filesystem::exists(snapshot_path)) {
    const json snap = json::parse(ReadFile(snapshot_path), nullptr, false);
    if (snap.is_discarded() || !snap.contains("events")) {
      Fail(ErrorCode::kParse, "corrupt snapshot {}", snapshot_path.string());
    }
    for (const json& event : snap["events"]) ApplyEvent(Dump(event));
    state_->seq = snap.at("seq").get<std::uint64_t>();
  }

  const auto log_path = options_.data_dir / kLogName;
  if (!std::filesystem::exists(log_path)) return;
  const std::string contents = ReadFile(log_path);
  std::size_t offset = 0;
  std::size_t line_no = 0;
  while (offset < contents.size()) {
    const std::size_t end = contents.find('\n', offset);
    ++line_no;
    const bool last = end == std::string::npos || end + 1 == contents.size();
    const std::string_view line = std::string_view(contents).substr(
        offset, end == std::string::npos ? std::string::npos : end - offset);
    const json event = json::parse(line, nullptr, false);
    if (end == std::string::npos || event.is_discarded()) {
      if (!last) {
        throw Error(ErrorCode::kParse,
                    fmt::format("corrupt record in {}", log_path.string()),
                    line_no);
      }
      // Torn tail from an interrupted append; it was never acknowledged.
      if (!options_.read_only)
        Log(log_path).Truncate(static_cast<off_t>(offset));
      break;
    }
    if (event.at("seq").get<std::uint64_t>() > state_->seq) {
      ApplyEvent(line);
      ++state_->since_snapshot;
    }
    offset = end + 1;
  }
}

void AnnotationStore::ApplyEvent(std::string_view line) {
  const json e = json::parse(line);
  State& s = *state_;
  s.seq = std::max(s.seq, e.value("seq", std::uint64_t{0}));
  const std::string type = e.at("type").get<std::string>();
  if (type == "batch") {
    BatchEntry entry;
    entry.doc = corpus::ParseBatchDocument(Dump(e.at("batch")));
    for (std::size_t i = 0; i < entry.doc.items.size(); ++i) {
      entry.index.emplace(entry.doc.items[i].post_id, i);
    }
    s.batches.insert_or_assign(entry.doc.batch_id, std::move(entry));
  } else if (type == "predictions") {
    s.predictions.insert_or_assign(e.at("batch_id").get<std::string>(),
                                   e.at("csv").get<std::string>());
  } else if (type == "project") {
    Project p = ProjectFromJson(e.at("project"));
    Annotator& a = s.annotators[p.annotator_id];
    a.annotator_id = p.annotator_id;
    a.expertise = ParseExpertise(e.at("expertise").get<std::string>());
    a.setups.insert(p.setup);
    s.projects.insert_or_assign(p.project_id, std::move(p));
  } else if (type == "label") {
    LabelRecord r;
    r.project_id = e.at("project_id").get<std::string>();
    r.post_id = e.at("post_id").get<std::string>();
    r.label = ParseLabel(e.at("label").get<std::string>());
    r.labeled_at = e.at("labeled_at").get<std::string>();
    s.labels[r.project_id].insert_or_assign(r.post_id, r);
  } else if (type == "survey") {
    SurveyResponse r = SurveyFromJson(e.at("survey"));
    s.surveys.insert_or_assign(r.project_id, std::move(r));
  } else {
    Fail(ErrorCode::kParse, "unknown event type \"{}\"", type);
  }
}

void AnnotationStore::Commit(const std::string& event_body) {
  if (options_.read_only) {
    Fail(ErrorCode::kPrecondition, "store opened read-only");
  }
  json event = json::parse(event_body);
  event["seq"] = state_->seq + 1;
  const std::string line = Dump(event);
  if (log_) log_->Append(line);
  ApplyEvent(line);
  ++state_->since_snapshot;
  if (log_ && options_.snapshot_every > 0 &&
      state_->since_snapshot >= options_.snapshot_every) {
    SnapshotLocked();
  }
}

void AnnotationStore::Snapshot() {
  std::unique_lock lock(mutex_);
  SnapshotLocked();
}

void AnnotationStore::SnapshotLocked() {
  if (!log_) return;
  const State& s = *state_;
  json events = json::array();
  for (const auto& [id, batch] : s.batches) {
    events.push_back({{"type", "batch"},
                      {"batch", json::parse(BatchDocumentToJson(batch.doc))}});
  }
  for (const auto& [id, csv] : s.predictions) {
    events.push_back({{"type", "predictions"}, {"batch_id", id}, {"csv", csv}});
  }
  for (const auto& [id, p] : s.projects) {
    events.push_back(
        {{"type", "project"},
         {"project", ProjectToJson(p)},
         {"expertise",
          ExpertiseName(s.annotators.at(p.annotator_id).expertise)}});
  }
  for (const auto& [pid, records] : s.labels) {
    for (const auto& [post, r] : records) {
      json e = LabelRecordToJson(r);
      e["type"] = "label";
      events.push_back(std::move(e));
    }
  }
  for (const auto& [pid, r] : s.surveys) {
    events.push_back({{"type", "survey"}, {"survey", SurveyToJson(r)}});
  }
  const json snap = {{"format", "adlabel-store-snapshot"},
                     {"version", 1},
                     {"seq", s.seq},
                     {"events", std::move(events)}};
  WriteFileAtomic(options_.data_dir / kSnapshotName, Dump(snap));
  // Records up to `seq` are now in the snapshot; a crash before this
  // truncation only means they are skipped on replay.
  log_->Truncate(0);
  state_->since_snapshot = 0;
}

void AnnotationStore::AddBatch(const corpus::BatchDocument& batch) {
  if (batch.batch_id.empty()) {
    Fail(ErrorCode::kValidation, "batch id is empty");
  }
  const std::string body = corpus::BatchDocumentToJson(batch);
  std::unique_lock lock(mutex_);
  if (const auto it = state_->batches.find(batch.batch_id);
      it != state_->batches.end()) {
    if (corpus::BatchDocumentToJson(it->second.doc) == body) return;
    Fail(ErrorCode::kConflict, "batch \"{}\" already exists with other items",
         batch.batch_id);
  }
  // Round-trip through the parser so duplicate ids are rejected up front.
  corpus::ParseBatchDocument(body);
  Commit(Dump({{"type", "batch"}, {"batch", json::parse(body)}}));
}

void AnnotationStore::SetPredictions(std::string_view batch_id,
                                     std::string predictions_csv) {
  std::unique_lock lock(mutex_);
  state_->FindBatch(batch_id);
  Commit(Dump({{"type", "predictions"},
               {"batch_id", batch_id},
               {"csv", std::move(predictions_csv)}}));
}

Project AnnotationStore::CreateProject(const CreateProjectRequest& request) {
  if (request.annotator_id.empty() ||
      request.annotator_id.find('@') != std::string::npos) {
    Fail(ErrorCode::kValidation,
         "annotator id must be non-empty and must not contain '@'");
  }
  std::unique_lock lock(mutex_);
  const BatchEntry& batch = state_->FindBatch(request.batch_id);
  const std::string id =
      MakeProjectId(request.annotator_id, request.setup, request.batch_id);
  if (state_->projects.contains(id)) {
    Fail(ErrorCode::kConflict,
         "annotator \"{}\" already has a {} project on {}",
         request.annotator_id, SetupName(request.setup), request.batch_id);
  }
  if (const auto a = state_->annotators.find(request.annotator_id);
      a != state_->annotators.end() &&
      a->second.expertise != request.expertise) {
    Fail(ErrorCode::kConflict, "annotator \"{}\" is registered as {}",
         request.annotator_id, ExpertiseName(a->second.expertise));
  }
  if (request.setup == Setup::kWithExplanations) {
    for (const corpus::BatchItem& item : batch.doc.items) {
      if (!item.explanation) {
        Fail(ErrorCode::kPrecondition, "batch \"{}\" has no explanation for {}",
             request.batch_id, item.post_id);
      }
    }
  }
  std::vector<std::string> ids;
  ids.reserve(batch.doc.items.size());
  for (const corpus::BatchItem& item : batch.doc.items)
    ids.push_back(item.post_id);

  Project p;
  p.project_id = id;
  p.annotator_id = request.annotator_id;
  p.setup = request.setup;
  p.batch_id = request.batch_id;
  p.seed = request.seed;
  p.item_order = ProjectOrder(ids, request.seed, id);
  p.created_at = Now();
  Commit(Dump({{"type", "project"},
               {"project", ProjectToJson(p)},
               {"expertise", ExpertiseName(request.expertise)}}));
  return p;
}

std::optional<ItemView> AnnotationStore::NextItem(
    std::string_view project_id) const {
  std::shared_lock lock(mutex_);
  const Project& p = state_->FindProject(project_id);
  const std::size_t cursor = state_->Cursor(p);
  if (cursor == p.item_order.size()) return std::nullopt;
  const BatchEntry& batch = state_->FindBatch(p.batch_id);
  const corpus::BatchItem& item =
      batch.doc.items[batch.index.find(p.item_order[cursor])->second];
  ItemView view;
  view.post_id = item.post_id;
  view.caption = item.caption;
  view.position = cursor + 1;
  view.total = p.item_order.size();
  if (p.setup == Setup::kWithExplanations) {
    view.explanation_block =
        FormatExplanationBlock(item.explanation.value_or(""));
  }
  return view;
}

LabelRecord AnnotationStore::SubmitLabel(std::string_view project_id,
                                         std::string_view post_id,
                                         Label label) {
  std::unique_lock lock(mutex_);
  const Project& p = state_->FindProject(project_id);
  const BatchEntry& batch = state_->FindBatch(p.batch_id);
  if (!batch.index.contains(post_id)) {
    Fail(ErrorCode::kValidation, "post \"{}\" is not in batch \"{}\"", post_id,
         p.batch_id);
  }
  const auto existing = state_->labels.find(project_id);
  const bool revision =
      existing != state_->labels.end() && existing->second.contains(post_id);
  if (!revision) {
    const std::size_t cursor = state_->Cursor(p);
    if (p.item_order[cursor] != post_id) {
      Fail(ErrorCode::kValidation,
           "post \"{}\" is not the next item (expected \"{}\")", post_id,
           p.item_order[cursor]);
    }
  }
  LabelRecord r;
  r.project_id = std::string(project_id);
  r.post_id = std::string(post_id);
  r.label = label;
  r.labeled_at = Now();
  json e = LabelRecordToJson(r);
  e["type"] = "label";
  Commit(Dump(e));
  return r;
}

AttentionReport AnnotationStore::Attention(std::string_view project_id) const {
  std::shared_lock lock(mutex_);
  const Project& p = state_->FindProject(project_id);
  const BatchEntry& batch = state_->FindBatch(p.batch_id);
  const auto labels = state_->labels.find(project_id);
  AttentionReport report;
  for (const corpus::BatchItem& item : batch.doc.items) {
    if (!item.disclosed) continue;
    ++report.disclosed_total;
    if (labels == state_->labels.end()) continue;
    const auto r = labels->second.find(item.post_id);
    if (r == labels->second.end()) continue;
    ++report.disclosed_seen;
    if (r->second.label == Label::kSponsored) ++report.disclosed_correct;
  }
  if (report.disclosed_seen > 0) {
    report.accuracy = static_cast<double>(report.disclosed_correct) /
                      static_cast<double>(report.disclosed_seen);
  }
  return report;
}

void AnnotationStore::SubmitSurvey(const SurveyResponse& response) {
  std::unique_lock lock(mutex_);
  const Project& p = state_->FindProject(response.project_id);
  if (p.setup != Setup::kWithExplanations) {
    Fail(ErrorCode::kValidation,
         "the survey is only collected for explanation projects");
  }
  ValidateSurvey(response);
  if (state_->surveys.contains(response.project_id)) {
    Fail(ErrorCode::kConflict, "survey already submitted for \"{}\"",
         response.project_id);
  }
  Commit(Dump({{"type", "survey"}, {"survey", SurveyToJson(response)}}));
}

LabelExport AnnotationStore::Export(std::string_view batch_id,
                                    const ExportFilter& filter) const {
  std::shared_lock lock(mutex_);
  const BatchEntry& batch = state_->FindBatch(batch_id);

  std::set<std::string> with;
  std::set<std::string> without;
  for (const auto& [id, p] : state_->projects) {
    if (p.batch_id != batch_id) continue;
    (p.setup == Setup::kWithExplanations ? with : without)
        .insert(p.annotator_id);
  }

  // Selected projects by rater id.
  std::map<std::string, const Project*> raters;
  for (const auto& [id, p] : state_->projects) {
    if (p.batch_id != batch_id) continue;
    const Annotator& a = state_->annotators.at(p.annotator_id);
    if (filter.expertise && a.expertise != *filter.expertise) continue;
    if (filter.setup && p.setup != *filter.setup) continue;
    raters.emplace(RaterId(p), &p);
  }

  std::vector<agreement::LabelEntry> entries;
  for (const auto& [rater, p] : raters) {
    const auto labels = state_->labels.find(p->project_id);
    if (labels == state_->labels.end()) continue;
    for (const corpus::BatchItem& item : batch.doc.items) {
      const auto r = labels->second.find(item.post_id);
      if (r == labels->second.end()) continue;
      entries.push_back({rater, item.post_id, r->second.label});
    }
  }

  agreement::ReportManifest manifest;
  manifest.batch_id = std::string(batch_id);
  for (const corpus::BatchItem& item : batch.doc.items) {
    manifest.items.push_back(item.post_id);
    if (item.disclosed) manifest.disclosed_ids.push_back(item.post_id);
  }
  struct Category {
    std::string_view suffix;
    std::function<bool(const Annotator&)> keep;
  };
  const std::vector<Category> categories = {
      {"", [](const Annotator&) { return true; }},
      {"/legal_experts",
       [](const Annotator& a) {
         return a.expertise == Expertise::kLegalExpert;
       }},
      {"/non_experts",
       [](const Annotator& a) {
         return a.expertise != Expertise::kLegalExpert;
       }},
      {"/both_setups",
       [&](const Annotator& a) {
         return a.expertise != Expertise::kLegalExpert &&
                with.contains(a.annotator_id) &&
                without.contains(a.annotator_id);
       }},
  };
  for (const Category& category : categories) {
    std::map<Setup, std::string> present;
    for (Setup setup :
         {Setup::kWithoutExplanations, Setup::kWithExplanations}) {
      agreement::GroupSpec group;
      group.group_id = fmt::format("{}{}",
                                   setup == Setup::kWithExplanations
                                       ? "with_explanations"
                                       : "without_explanations",
                                   category.suffix);
      for (const auto& [rater, p] : raters) {
        if (p->setup == setup &&
            category.keep(state_->annotators.at(p->annotator_id))) {
          group.annotators.push_back(rater);
        }
      }
      if (group.annotators.empty()) continue;
      present.emplace(setup, group.group_id);
      manifest.groups.push_back(std::move(group));
    }
    if (present.size() == 2) {
      manifest.comparisons.push_back({present[Setup::kWithoutExplanations],
                                      present[Setup::kWithExplanations]});
    }
  }

  LabelExport out;
  out.rows = entries.size();
  out.labels_csv = agreement::FormatLabelFile(entries);
  out.manifest_json = agreement::ManifestToJson(manifest);
  return out;
}

std::string AnnotationStore::Report(std::string_view batch_id,
                                    bool text) const {
  const LabelExport exported = Export(batch_id);
  std::optional<std::string> predictions;
  {
    std::shared_lock lock(mutex_);
    if (const auto it = state_->predictions.find(batch_id);
        it != state_->predictions.end()) {
      predictions = it->second;
    }
  }
  const agreement::FullReport report = agreement::ReplayReport(
      exported.labels_csv, agreement::ParseManifest(exported.manifest_json),
      predictions ? std::optional<std::string_view>(*predictions)
                  : std::nullopt);
  return text ? agreement::ReportToText(report)
              : agreement::ReportToJson(report);
}

Project AnnotationStore::GetProject(std::string_view project_id) const {
  std::shared_lock lock(mutex_);
  return state_->FindProject(project_id);
}

std::vector<Project> AnnotationStore::Projects() const {
  std::shared_lock lock(mutex_);
  std::vector<Project> out;
  for (const auto& [id, p] : state_->projects) out.push_back(p);
  return out;
}

std::vector<Annotator> AnnotationStore::Annotators() const {
  std::shared_lock lock(mutex_);
  std::vector<Annotator> out;
  for (const auto& [id, a] : state_->annotators) out.push_back(a);
  return out;
}

std::vector<LabelRecord> AnnotationStore::Labels(
    std::string_view project_id) const {
  std::shared_lock lock(mutex_);
  const Project& p = state_->FindProject(project_id);
  std::vector<LabelRecord> out;
  const auto labels = state_->labels.find(project_id);
  if (labels == state_->labels.end()) return out;
  for (const std::string& id : p.item_order) {
    if (const auto r = labels->second.find(id); r != labels->second.end()) {
      out.push_back(r->second);
    }
  }
  return out;
}

std::optional<SurveyResponse> AnnotationStore::Survey(
    std::string_view project_id) const {
  std::shared_lock lock(mutex_);
  state_->FindProject(project_id);
  const auto it = state_->surveys.find(project_id);
  if (it == state_->surveys.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> AnnotationStore::BatchIds() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, b] : state_->batches) out.push_back(id);
  return out;
}

}  // namespace adlabel::service
