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

#include <fmt/format.h>

#include <cstdio>
#include <exception>

#include "CLI11.hpp"
#include "adlabel/common/error.h"
#include "commands.h"

int main(int argc, char** argv) {
  using namespace adlabel::tools;

  CLI::App app{"Sponsored-content annotation toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option defaults");

  GlobalOptions global;
  std::string data_dir = global.data_dir.string();
  app.add_option("--data-dir", data_dir, "Working directory for artifacts")
      ->capture_default_str();
  app.add_option("--seed", global.seed, "Seed for every random choice")
      ->capture_default_str();

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Read line-delimited posts");
  ingest_cmd->add_option("input", ingest.input, "JSONL file")->required();

  auto* weak_cmd = app.add_subcommand(
      "weak-label", "Label posts by disclosure and undersample the majority");

  SplitOptions split;
  auto* split_cmd =
      app.add_subcommand("split", "Temporal train/validation/test split");
  split_cmd->add_option("--cutoff-year", split.cutoff_year)
      ->capture_default_str();
  split_cmd->add_option("--train-percent", split.train_percent)
      ->capture_default_str();

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train the detector");
  train_cmd->add_option("--learning-rate", train.learning_rate)
      ->capture_default_str();
  train_cmd->add_option("--epochs", train.epochs)->capture_default_str();
  train_cmd->add_option("--l2", train.l2)->capture_default_str();
  train_cmd->add_option("--min-df", train.min_df)->capture_default_str();
  train_cmd->add_option("--max-n", train.max_n)->capture_default_str();
  train_cmd->add_option("--model-id", train.model_id)->capture_default_str();

  PredictOptions predict;
  std::string predict_output;
  auto* predict_cmd = app.add_subcommand("predict", "Predict a split part");
  predict_cmd->add_option("--part", predict.part)
      ->check(CLI::IsMember({"train", "validation", "test"}))
      ->capture_default_str();
  predict_cmd->add_option("--batch", predict.batch_id,
                          "Predict this batch's items instead of a part");
  predict_cmd->add_option("--output", predict_output, "Predictions CSV");

  BatchOptions batch;
  auto* batch_cmd = app.add_subcommand("batch", "Sample an annotation batch");
  batch_cmd->add_option("--size", batch.size)->capture_default_str();
  batch_cmd->add_option("--disclosed-share", batch.disclosed_share)
      ->capture_default_str();
  batch_cmd->add_option("--batch-id", batch.batch_id);

  ExplainOptions explain;
  std::string recipe;
  auto* explain_cmd = app.add_subcommand(
      "explain", "Attach explanations to a batch (remote, then local model)");
  explain_cmd->add_option("--batch", explain.batch_id)->required();
  explain_cmd->add_option("--endpoint", explain.endpoint,
                          "Chat-completion base URL; omit for local only");
  explain_cmd->add_option("--model", explain.model)->capture_default_str();
  explain_cmd
      ->add_option("--api-key-env", explain.api_key_env,
                   "Environment variable holding the API key")
      ->capture_default_str();
  explain_cmd->add_option("--recipe", recipe, "Prompt recipe JSON");
  explain_cmd->add_option("--temperature", explain.temperature)
      ->capture_default_str();
  explain_cmd->add_option("--workers", explain.workers)->capture_default_str();
  explain_cmd->add_option("--rps", explain.requests_per_second)
      ->capture_default_str();

  ServeOptions serve;
  std::string predictions_file;
  auto* serve_cmd = app.add_subcommand("serve", "Run the annotation API");
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("--port", serve.port)->capture_default_str();
  serve_cmd->add_option("--predictions", predictions_file,
                        "Model predictions CSV for the bias probe");
  serve_cmd->add_option("--predictions-batch", serve.predictions_batch);

  ExportOptions export_opts;
  std::string export_dir = ".";
  auto* export_cmd = app.add_subcommand("export", "Export labels and manifest");
  export_cmd->add_option("--batch", export_opts.batch_id)->required();
  export_cmd->add_option("--expertise", export_opts.expertise)
      ->check(CLI::IsMember({"NoExperience", "SomeExperience", "LegalExpert"}));
  export_cmd->add_option("--setup", export_opts.setup)
      ->check(CLI::IsMember({"WithExplanations", "WithoutExplanations"}));
  export_cmd->add_option("--output-dir", export_dir)->capture_default_str();

  ReportOptions report;
  std::string report_predictions;
  std::string report_dir;
  auto* report_cmd =
      app.add_subcommand("report", "Agreement report from files");
  report_cmd->add_option("--labels", report.labels)->required();
  report_cmd->add_option("--manifest", report.manifest)->required();
  report_cmd->add_option("--predictions", report_predictions);
  report_cmd->add_option("--output-dir", report_dir);

  CLI11_PARSE(app, argc, argv);
  global.data_dir = data_dir;

  try {
    if (*ingest_cmd) return Ingest(global, ingest);
    if (*weak_cmd) return WeakLabelCommand(global);
    if (*split_cmd) return Split(global, split);
    if (*train_cmd) return Train(global, train);
    if (*predict_cmd) {
      if (!predict_output.empty()) predict.output = predict_output;
      return Predict(global, predict);
    }
    if (*batch_cmd) return Batch(global, batch);
    if (*explain_cmd) {
      if (!recipe.empty()) explain.recipe = recipe;
      return Explain(global, explain);
    }
    if (*serve_cmd) {
      if (!predictions_file.empty()) {
        if (serve.predictions_batch.empty()) {
          fmt::print(stderr, "--predictions needs --predictions-batch\n");
          return 2;
        }
        serve.predictions = predictions_file;
      }
      return Serve(global, serve);
    }
    if (*export_cmd) {
      export_opts.output_dir = export_dir;
      return Export(global, export_opts);
    }
    if (*report_cmd) {
      if (!report_predictions.empty()) report.predictions = report_predictions;
      if (!report_dir.empty()) report.output_dir = report_dir;
      return Report(global, report);
    }
  } catch (const adlabel::Error& e) {
    fmt::print(stderr, "error ({}): {}\n", adlabel::ErrorCodeName(e.code()),
               e.what());
    return 1;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
