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

#ifndef ADLABEL_TOOLS_COMMANDS_H_
#define ADLABEL_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace adlabel::tools {

// Files under --data-dir:
//   corpus.jsonl          ingested posts
//   weak_labeled.jsonl    every post with its weak label
//   balanced.jsonl        undersampled subset used for training
//   split/*.ids           temporal split manifests
//   model.json            detector artifact
//   predictions.csv       detector output
//   batches/<id>.json     annotation batches
//   explanations.jsonl    explanation records
//   cache/                completion cache
//   service/              annotation store
struct GlobalOptions {
  std::filesystem::path data_dir = "adlabel-data";
  std::uint64_t seed = 42;
};

struct IngestOptions {
  std::filesystem::path input;
};
int Ingest(const GlobalOptions& g, const IngestOptions& o);

int WeakLabelCommand(const GlobalOptions& g);

struct SplitOptions {
  int cutoff_year = 2022;
  int train_percent = 90;
};
int Split(const GlobalOptions& g, const SplitOptions& o);

struct TrainOptions {
  double learning_rate = 0.1;
  int epochs = 300;
  double l2 = 1e-4;
  int min_df = 2;
  int max_n = 3;
  std::string model_id = "logreg-tfidf";
};
int Train(const GlobalOptions& g, const TrainOptions& o);

struct PredictOptions {
  // train, validation or test.
  std::string part = "test";
  // When set, predicts the items of this batch instead of a split part.
  std::string batch_id;
  std::optional<std::filesystem::path> output;
};
int Predict(const GlobalOptions& g, const PredictOptions& o);

struct BatchOptions {
  std::size_t size = 200;
  double disclosed_share = 0.15;
  std::string batch_id;
};
int Batch(const GlobalOptions& g, const BatchOptions& o);

struct ExplainOptions {
  std::string batch_id;
  // Empty disables the remote endpoint.
  std::string endpoint;
  std::string model = "gpt-3.5-turbo";
  std::string api_key_env = "ADLABEL_API_KEY";
  std::optional<std::filesystem::path> recipe;
  double temperature = 0.0;
  int workers = 4;
  double requests_per_second = 3.0;
};
int Explain(const GlobalOptions& g, const ExplainOptions& o);

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  // Attached to `predictions_batch` for the bias probe.
  std::optional<std::filesystem::path> predictions;
  std::string predictions_batch;
};
int Serve(const GlobalOptions& g, const ServeOptions& o);

struct ExportOptions {
  std::string batch_id;
  std::string expertise;
  std::string setup;
  std::filesystem::path output_dir = ".";
};
int Export(const GlobalOptions& g, const ExportOptions& o);

struct ReportOptions {
  std::filesystem::path labels;
  std::filesystem::path manifest;
  std::optional<std::filesystem::path> predictions;
  std::optional<std::filesystem::path> output_dir;
};
int Report(const GlobalOptions& g, const ReportOptions& o);

}  // namespace adlabel::tools

#endif  // ADLABEL_TOOLS_COMMANDS_H_
