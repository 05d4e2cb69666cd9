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

#include "commands.h"

#include <csignal>
#include <map>
#include <set>
#include <thread>
#include <unordered_set>
#include <vector>

#include "adlabel/agreement/report.h"
#include "adlabel/common/error.h"
#include "adlabel/common/file_util.h"
#include "adlabel/corpus/corpus_io.h"
#include "adlabel/corpus/ingest.h"
#include "adlabel/corpus/sampling.h"
#include "adlabel/corpus/weak_label.h"
#include "adlabel/detector/detector.h"
#include "adlabel/detector/evaluation.h"
#include "adlabel/detector/predictions.h"
#include "adlabel/explainer/completion_client.h"
#include "adlabel/explainer/explainer.h"
#include "adlabel/explainer/explanation.h"
#include "adlabel/explainer/recipe.h"
#include "adlabel/service/annotation_store.h"
#include "adlabel/service/http_api.h"

namespace adlabel::tools {
namespace {

namespace fs = std::filesystem;

fs::path CorpusPath(const GlobalOptions& g) {
  return g.data_dir / "corpus.jsonl";
}
fs::path WeakPath(const GlobalOptions& g) {
  return g.data_dir / "weak_labeled.jsonl";
}
fs::path BalancedPath(const GlobalOptions& g) {
  return g.data_dir / "balanced.jsonl";
}
fs::path SplitDir(const GlobalOptions& g) { return g.data_dir / "split"; }
fs::path ModelPath(const GlobalOptions& g) { return g.data_dir / "model.json"; }
fs::path BatchPath(const GlobalOptions& g, std::string_view id) {
  return g.data_dir / "batches" / fmt::format("{}.json", id);
}

std::string WeakRecords(std::span<const corpus::WeakLabeledPost> posts) {
  std::string out;
  for (const auto& p : posts) {
    out += corpus::WeakLabeledToRecord(p);
    out += '\n';
  }
  return out;
}

std::vector<corpus::WeakLabeledPost> SelectPart(
    std::span<const corpus::WeakLabeledPost> posts, const fs::path& ids_file) {
  const corpus::IdList list = corpus::ReadIdList(ids_file);
  std::map<std::string_view, const corpus::WeakLabeledPost*> by_id;
  for (const auto& p : posts) by_id[p.post.post_id] = &p;
  std::vector<corpus::WeakLabeledPost> out;
  for (const std::string& id : list.ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      Fail(ErrorCode::kNotFound, "{} lists unknown post \"{}\"",
           ids_file.string(), id);
    }
    out.push_back(*it->second);
  }
  return out;
}

void PrintEval(std::string_view title, const detector::EvalReport& r) {
  fmt::print("{}: pos_f1={:.2f} neg_f1={:.2f} macro_f1={:.2f}", title, r.pos_f1,
             r.neg_f1, r.macro_f1);
  if (r.undisclosed_acc)
    fmt::print(" undisclosed_acc={:.2f}", *r.undisclosed_acc);
  fmt::print(" (tp={} fp={} fn={} tn={})\n", r.true_positives,
             r.false_positives, r.false_negatives, r.true_negatives);
}

// Weak-labelled posts of a batch, in batch order.
std::vector<corpus::WeakLabeledPost> BatchPosts(const GlobalOptions& g,
                                                std::string_view batch_id) {
  const corpus::BatchDocument doc =
      corpus::ParseBatchDocument(ReadFile(BatchPath(g, batch_id)));
  const auto labeled = corpus::ReadWeakLabeled(ReadFile(WeakPath(g)));
  std::map<std::string_view, const corpus::WeakLabeledPost*> by_id;
  for (const auto& p : labeled) by_id[p.post.post_id] = &p;
  std::vector<corpus::WeakLabeledPost> posts;
  for (const corpus::BatchItem& item : doc.items) {
    const auto it = by_id.find(item.post_id);
    if (it == by_id.end()) {
      Fail(ErrorCode::kNotFound, "batch item \"{}\" is not in {}", item.post_id,
           WeakPath(g).string());
    }
    posts.push_back(*it->second);
  }
  return posts;
}

service::AnnotationStore OpenStore(const GlobalOptions& g, bool read_only) {
  service::StoreOptions options;
  options.data_dir = g.data_dir / "service";
  options.read_only = read_only;
  return service::AnnotationStore(std::move(options));
}

std::atomic<service::ApiServer*> g_server{nullptr};

extern "C" void HandleStop(int) {
  if (service::ApiServer* s = g_server.load()) s->Stop();
}

}  // namespace

int Ingest(const GlobalOptions& g, const IngestOptions& o) {
  const corpus::Corpus c = corpus::IngestPosts(ReadFile(o.input));
  std::string out;
  for (const corpus::Post& p : c.posts()) {
    out += corpus::PostToRecord(p);
    out += '\n';
  }
  WriteFileAtomic(CorpusPath(g), out);
  fmt::print("ingested {} posts into {}\n", c.size(), CorpusPath(g).string());
  return 0;
}

int WeakLabelCommand(const GlobalOptions& g) {
  const corpus::Corpus c = corpus::IngestPosts(ReadFile(CorpusPath(g)));
  const auto labeled = corpus::WeakLabel(c);
  const auto balanced = corpus::Undersample(labeled, g.seed);
  WriteFileAtomic(WeakPath(g), WeakRecords(labeled));
  WriteFileAtomic(BalancedPath(g), WeakRecords(balanced));
  std::size_t disclosed = 0;
  for (const auto& p : labeled) disclosed += p.disclosed();
  fmt::print("weak-labelled {} posts ({} disclosed); balanced set has {}\n",
             labeled.size(), disclosed, balanced.size());
  return 0;
}

int Split(const GlobalOptions& g, const SplitOptions& o) {
  const auto balanced = corpus::ReadWeakLabeled(ReadFile(BalancedPath(g)));
  const corpus::DatasetSplit split =
      corpus::TemporalSplit(balanced, {.cutoff_year = o.cutoff_year,
                                       .train_percent = o.train_percent,
                                       .seed = g.seed});
  corpus::WriteSplitManifests(split, SplitDir(g));
  fmt::print("train={} validation={} test={} excluded={}\n", split.train.size(),
             split.validation.size(), split.test.size(), split.excluded.size());
  return 0;
}

int Train(const GlobalOptions& g, const TrainOptions& o) {
  const auto balanced = corpus::ReadWeakLabeled(ReadFile(BalancedPath(g)));
  const auto train = SelectPart(balanced, SplitDir(g) / "train.ids");
  detector::DetectorOptions options;
  options.model_id = o.model_id;
  options.vectorizer.min_df = o.min_df;
  options.vectorizer.max_n = o.max_n;
  options.training.learning_rate = o.learning_rate;
  options.training.max_epochs = o.epochs;
  options.training.l2_lambda = o.l2;
  const detector::DetectorModel model = detector::TrainDetector(train, options);
  WriteFileAtomic(ModelPath(g), detector::SerializeModel(model));
  const auto& meta = model.classifier.meta();
  fmt::print(
      "trained {} on {} posts: vocabulary={} epochs={} loss {:.4f} -> {:.4f}\n",
      model.model_id, train.size(), model.vectorizer.size(), meta.epochs,
      meta.initial_loss, meta.final_loss);
  const fs::path validation_ids = SplitDir(g) / "validation.ids";
  if (fs::exists(validation_ids)) {
    const auto validation = SelectPart(balanced, validation_ids);
    if (!validation.empty()) {
      PrintEval("validation",
                detector::Evaluate(detector::PredictAll(model, validation),
                                   detector::WeakTruth(validation)));
    }
  }
  return 0;
}

int Predict(const GlobalOptions& g, const PredictOptions& o) {
  const detector::DetectorModel model =
      detector::ParseModel(ReadFile(ModelPath(g)));
  std::vector<corpus::WeakLabeledPost> posts;
  if (o.batch_id.empty()) {
    posts = SelectPart(corpus::ReadWeakLabeled(ReadFile(BalancedPath(g))),
                       SplitDir(g) / (o.part + ".ids"));
  } else {
    posts = BatchPosts(g, o.batch_id);
  }
  const auto predictions = detector::PredictAll(model, posts);
  const fs::path out = o.output.value_or(g.data_dir / "predictions.csv");
  WriteFileAtomic(out, detector::FormatPredictions(predictions));
  fmt::print("wrote {} predictions to {}\n", predictions.size(), out.string());
  if (!posts.empty()) {
    PrintEval(o.batch_id.empty() ? o.part : o.batch_id,
              detector::Evaluate(predictions, detector::WeakTruth(posts)));
  }
  return 0;
}

int Batch(const GlobalOptions& g, const BatchOptions& o) {
  const auto labeled = corpus::ReadWeakLabeled(ReadFile(WeakPath(g)));
  std::vector<corpus::Post> posts;
  posts.reserve(labeled.size());
  for (const auto& p : labeled) posts.push_back(p.post);
  const corpus::AnnotationBatch batch =
      corpus::BuildAnnotationBatch(posts, {.size = o.size,
                                           .disclosed_share = o.disclosed_share,
                                           .seed = g.seed,
                                           .batch_id = o.batch_id});
  const corpus::BatchDocument doc =
      corpus::MakeBatchDocument(batch, labeled, {});
  WriteFileAtomic(BatchPath(g, doc.batch_id), corpus::BatchDocumentToJson(doc));
  fmt::print("batch {}: {} items, {} disclosed -> {}\n", doc.batch_id,
             doc.items.size(), batch.disclosed_items.size(),
             BatchPath(g, doc.batch_id).string());
  return 0;
}

int Explain(const GlobalOptions& g, const ExplainOptions& o) {
  const fs::path batch_path = BatchPath(g, o.batch_id);
  corpus::BatchDocument doc = corpus::ParseBatchDocument(ReadFile(batch_path));
  const auto posts = BatchPosts(g, o.batch_id);

  const explainer::PromptRecipe recipe =
      o.recipe ? explainer::LoadRecipe(*o.recipe) : explainer::DefaultRecipe();
  std::optional<detector::DetectorModel> model;
  if (fs::exists(ModelPath(g))) {
    model = detector::ParseModel(ReadFile(ModelPath(g)));
  }
  std::optional<explainer::CompletionCache> cache;
  std::optional<explainer::CompletionClient> client;
  if (!o.endpoint.empty()) {
    explainer::EndpointConfig config;
    config.base_url = o.endpoint;
    config.model = o.model;
    config.api_key_env = o.api_key_env;
    config.temperature = o.temperature;
    config.requests_per_second = o.requests_per_second;
    cache.emplace(g.data_dir / "cache");
    client.emplace(config, &*cache);
  }
  explainer::Explainer explainer(recipe, client ? &*client : nullptr,
                                 model ? &*model : nullptr);
  const auto outcomes = explainer.ExplainAll(
      posts, static_cast<std::size_t>(std::max(1, o.workers)));

  std::string records;
  std::size_t fallbacks = 0;
  std::map<std::string, std::string> display;
  for (const auto& outcome : outcomes) {
    records += explainer::ExplanationToRecord(outcome.explanation);
    records += '\n';
    if (outcome.explanation.source ==
        explainer::ExplanationSource::kLocalFallback) {
      ++fallbacks;
    }
    display[outcome.explanation.post_id] =
        explainer::FormatForDisplay(outcome.explanation);
  }
  for (corpus::BatchItem& item : doc.items)
    item.explanation = display[item.post_id];
  WriteFileAtomic(g.data_dir / "explanations.jsonl", records);
  WriteFileAtomic(batch_path, corpus::BatchDocumentToJson(doc));
  fmt::print("explained {} posts ({} remote, {} local fallback); recipe {}\n",
             outcomes.size(), outcomes.size() - fallbacks, fallbacks,
             explainer.recipe_digest().substr(0, 12));
  if (client) fmt::print("requests sent: {}\n", client->requests_sent());
  return 0;
}

int Serve(const GlobalOptions& g, const ServeOptions& o) {
  service::AnnotationStore store = OpenStore(g, false);
  const fs::path batches = g.data_dir / "batches";
  if (fs::exists(batches)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(batches)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      try {
        store.AddBatch(corpus::ParseBatchDocument(ReadFile(file)));
      } catch (const Error& e) {
        fmt::print(stderr, "skipping {}: {}\n", file.string(), e.what());
      }
    }
  }
  if (o.predictions) {
    store.SetPredictions(o.predictions_batch, ReadFile(*o.predictions));
  }
  service::ApiServer server(store);
  const int port = server.Bind(o.host, o.port);
  g_server.store(&server);
  std::signal(SIGINT, HandleStop);
  std::signal(SIGTERM, HandleStop);
  fmt::print("serving {} batch(es) on http://{}:{}\n", store.BatchIds().size(),
             o.host, port);
  std::fflush(stdout);
  server.Serve();
  g_server.store(nullptr);
  store.Snapshot();
  return 0;
}

int Export(const GlobalOptions& g, const ExportOptions& o) {
  const service::AnnotationStore store = OpenStore(g, true);
  service::ExportFilter filter;
  if (!o.expertise.empty())
    filter.expertise = service::ParseExpertise(o.expertise);
  if (!o.setup.empty()) filter.setup = service::ParseSetup(o.setup);
  const service::LabelExport out = store.Export(o.batch_id, filter);
  WriteFileAtomic(o.output_dir / "labels.csv", out.labels_csv);
  WriteFileAtomic(o.output_dir / "manifest.json", out.manifest_json);
  fmt::print("exported {} labels to {}\n", out.rows, o.output_dir.string());
  return 0;
}

int Report(const GlobalOptions&, const ReportOptions& o) {
  std::optional<std::string> predictions;
  if (o.predictions) predictions = ReadFile(*o.predictions);
  const agreement::FullReport report = agreement::ReplayReport(
      ReadFile(o.labels), agreement::ParseManifest(ReadFile(o.manifest)),
      predictions ? std::optional<std::string_view>(*predictions)
                  : std::nullopt);
  const std::string text = agreement::ReportToText(report);
  if (o.output_dir) {
    WriteFileAtomic(*o.output_dir / "report.json",
                    agreement::ReportToJson(report));
    WriteFileAtomic(*o.output_dir / "report.txt", text);
  }
  fmt::print("{}", text);
  return 0;
}

}  // namespace adlabel::tools
