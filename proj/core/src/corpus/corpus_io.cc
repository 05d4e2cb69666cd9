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

#include "adlabel/corpus/corpus_io.h"

#include <unordered_map>

#include "adlabel/common/error.h"
#include "adlabel/common/file_util.h"
#include "adlabel/common/rng.h"
#include "adlabel/common/text.h"
#include "json.hpp"

namespace adlabel::corpus {

using nlohmann::json;

std::string FormatIdList(const IdList& list) {
  std::string out;
  for (const auto& [key, value] : list.metadata) {
    out += fmt::format("# {}={}\n", key, value);
  }
  for (const std::string& id : list.ids) {
    out += id;
    out += '\n';
  }
  return out;
}

IdList ParseIdList(std::string_view contents) {
  IdList list;
  while (!contents.empty()) {
    const std::size_t nl = contents.find('\n');
    std::string_view line = text::TrimWhitespace(contents.substr(0, nl));
    contents.remove_prefix(nl == std::string_view::npos ? contents.size()
                                                        : nl + 1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(1);
      line = text::TrimWhitespace(line);
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) continue;  // plain comment
      list.metadata[std::string(text::TrimWhitespace(line.substr(0, eq)))] =
          std::string(text::TrimWhitespace(line.substr(eq + 1)));
      continue;
    }
    list.ids.emplace_back(line);
  }
  return list;
}

IdList ReadIdList(const std::filesystem::path& path) {
  return ParseIdList(ReadFile(path));
}

void WriteSplitManifests(const DatasetSplit& split,
                         const std::filesystem::path& dir) {
  const auto write_part = [&](std::string_view part,
                              const std::vector<WeakLabeledPost>& posts) {
    IdList list;
    list.metadata = {
        {"seed", std::to_string(split.spec.seed)},
        {"cutoff_year", std::to_string(split.spec.cutoff_year)},
        {"train_percent", std::to_string(split.spec.train_percent)},
        {"prng", std::string(StableRng::kAlgorithm)},
        {"part", std::string(part)},
        {"count", std::to_string(posts.size())},
    };
    for (const WeakLabeledPost& post : posts) {
      list.ids.push_back(post.post.post_id);
    }
    WriteFileAtomic(dir / fmt::format("{}.ids", part), FormatIdList(list));
  };
  write_part("train", split.train);
  write_part("validation", split.validation);
  write_part("test", split.test);
  if (!split.excluded.empty()) write_part("excluded", split.excluded);
}

BatchDocument MakeBatchDocument(
    const AnnotationBatch& batch, std::span<const WeakLabeledPost> posts,
    const std::map<std::string, std::string>& explanations) {
  std::unordered_map<std::string_view, const WeakLabeledPost*> by_id;
  for (const WeakLabeledPost& post : posts) by_id[post.post.post_id] = &post;

  BatchDocument doc;
  doc.batch_id = batch.batch_id;
  doc.seed = batch.seed;
  doc.disclosed_share = batch.disclosed_share;
  for (const std::string& id : batch.items) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      Fail(ErrorCode::kNotFound, "no post with id \"{}\"", id);
    }
    BatchItem item;
    item.post_id = id;
    // Annotators see the original caption so attention checks stay visible.
    item.caption = it->second->post.caption;
    item.disclosed = it->second->disclosed();
    if (const auto e = explanations.find(id); e != explanations.end()) {
      item.explanation = e->second;
    }
    doc.items.push_back(std::move(item));
  }
  return doc;
}

std::string BatchDocumentToJson(const BatchDocument& doc) {
  json items = json::array();
  for (const BatchItem& item : doc.items) {
    json entry = {{"post_id", item.post_id},
                  {"caption", item.caption},
                  {"disclosed", item.disclosed}};
    if (item.explanation) entry["explanation"] = *item.explanation;
    items.push_back(std::move(entry));
  }
  const json root = {{"format", "adlabel-batch"},
                     {"version", 1},
                     {"batch_id", doc.batch_id},
                     {"seed", doc.seed},
                     {"disclosed_share", doc.disclosed_share},
                     {"items", std::move(items)}};
  return root.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

BatchDocument ParseBatchDocument(std::string_view text) {
  const json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object()) {
    Fail(ErrorCode::kParse, "batch document is not a JSON object");
  }
  try {
    BatchDocument doc;
    doc.batch_id = root.at("batch_id").get<std::string>();
    doc.seed = root.value("seed", std::uint64_t{0});
    doc.disclosed_share = root.value("disclosed_share", 0.0);
    std::unordered_map<std::string, bool> seen;
    for (const json& entry : root.at("items")) {
      BatchItem item;
      item.post_id = entry.at("post_id").get<std::string>();
      item.caption = entry.at("caption").get<std::string>();
      item.disclosed = entry.at("disclosed").get<bool>();
      if (entry.contains("explanation") && !entry["explanation"].is_null()) {
        item.explanation = entry["explanation"].get<std::string>();
      }
      if (!seen.emplace(item.post_id, true).second) {
        Fail(ErrorCode::kParse, "duplicate item \"{}\" in batch", item.post_id);
      }
      doc.items.push_back(std::move(item));
    }
    return doc;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, "malformed batch document: {}", e.what());
  }
}

}  // namespace adlabel::corpus
