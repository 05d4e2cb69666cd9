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

#include "adlabel/agreement/report.h"

#include <fmt/format.h>

#include <algorithm>
#include <set>

#include "adlabel/common/error.h"
#include "adlabel/detector/predictions.h"
#include "json.hpp"

namespace adlabel::agreement {
namespace {

using nlohmann::json;

template <typename F>
std::optional<double> Metric(F&& compute, std::string_view name,
                             std::vector<std::string>& notes) {
  try {
    return compute();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUndefinedMetric) throw;
    notes.push_back(fmt::format("{}: {}", name, e.what()));
    return std::nullopt;
  }
}

AgreementReport GroupReport(const LabelMatrix& full,
                            std::span<const std::string> disclosed_ids,
                            const GroupSpec& group,
                            const std::map<std::string, Label>* predictions) {
  const LabelMatrix m = full.RestrictAnnotators(group.annotators);
  AgreementReport r;
  r.group_id = group.group_id;
  r.annotator_count = group.annotators.size();
  auto& notes = r.notes;
  if (m.annotator_count() < 2) {
    notes.push_back("alpha, abs, 1-disag: fewer than two annotators");
  } else {
    r.alpha_pct =
        Metric([&] { return 100.0 * KrippendorffAlpha(m); }, "alpha", notes);
    r.abs_pct =
        Metric([&] { return 100.0 * AbsoluteAgreement(m); }, "abs", notes);
    r.one_disag_pct = Metric([&] { return 100.0 * AtMostOneDisagreement(m); },
                             "1-disag", notes);
  }
  if (!disclosed_ids.empty()) {
    r.disclosed_acc_pct =
        Metric([&] { return 100.0 * DisclosedAccuracy(m, disclosed_ids); },
               "acc", notes);
  } else {
    notes.push_back("acc: no disclosed posts given");
  }
  r.sponsored_pct = Metric([&] { return 100.0 * SponsoredProportion(m); },
                           "sponsored", notes);
  r.sponsored_pooled_pct =
      Metric([&] { return 100.0 * SponsoredProportion(m, /*pooled=*/true); },
             "sponsored_pooled", notes);
  if (m.annotator_count() >= 2) r.pairwise = PairwiseAgreement(m);
  if (predictions != nullptr) {
    try {
      r.bias = ModelAgreementMajority(m, *predictions);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUndefinedMetric) throw;
      notes.push_back(fmt::format("model agreement: {}", e.what()));
    }
  }
  return r;
}

struct NamedValue {
  std::string_view name;
  std::optional<double> value;
};

std::vector<NamedValue> Flatten(const AgreementReport& r) {
  std::optional<PairSummary> s;
  if (r.pairwise) s = r.pairwise->summary;
  const auto pick = [&](double PairSummary::* field) -> std::optional<double> {
    if (!s) return std::nullopt;
    return (*s).*field;
  };
  std::optional<double> model_agreement;
  if (r.bias) model_agreement = r.bias->model_majority_agreement_pct;
  return {{"alpha", r.alpha_pct},
          {"abs", r.abs_pct},
          {"one_disag", r.one_disag_pct},
          {"disclosed_acc", r.disclosed_acc_pct},
          {"sponsored", r.sponsored_pct},
          {"min_abs", pick(&PairSummary::min_abs)},
          {"max_abs", pick(&PairSummary::max_abs)},
          {"std_abs", pick(&PairSummary::std_abs)},
          {"min_alpha", pick(&PairSummary::min_alpha)},
          {"max_alpha", pick(&PairSummary::max_alpha)},
          {"std_alpha", pick(&PairSummary::std_alpha)},
          {"model_agreement", model_agreement}};
}

ComparisonReport Compare(const AgreementReport& base,
                         const AgreementReport& next) {
  ComparisonReport out{base.group_id, next.group_id, {}};
  const auto a = Flatten(base);
  const auto b = Flatten(next);
  for (std::size_t i = 0; i < a.size(); ++i) {
    MetricDiff d{std::string(a[i].name), a[i].value, b[i].value, {}, {}};
    if (d.base && d.next) {
      d.absolute_diff = *d.next - *d.base;
      if (*d.base != 0.0) d.relative_diff = RelativeDiff(*d.base, *d.next);
    }
    out.diffs.push_back(std::move(d));
  }
  return out;
}

json Optional(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string Cell(const std::optional<double>& v) {
  return v ? fmt::format("{:.2f}", *v) : std::string("n/a");
}

class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) {
    rows_.push_back(std::move(header));
  }
  void Add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void Rule() { rows_.emplace_back(); }

  std::string Render() const {
    std::vector<std::size_t> widths;
    for (const auto& row : rows_) {
      widths.resize(std::max(widths.size(), row.size()));
      for (std::size_t c = 0; c < row.size(); ++c) {
        widths[c] = std::max(widths[c], row[c].size());
      }
    }
    std::size_t total = 0;
    for (const std::size_t w : widths) total += w + 2;
    std::string out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto& row = rows_[r];
      if (row.empty()) {
        out += std::string(total - 2, '-') + "\n";
        continue;
      }
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) line += "  ";
        line += c == 0 ? fmt::format("{:<{}}", row[c], widths[c])
                       : fmt::format("{:>{}}", row[c], widths[c]);
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + "\n";
      if (r == 0) out += std::string(total - 2, '-') + "\n";
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

const MetricDiff* FindDiff(const ComparisonReport& c, std::string_view metric) {
  for (const MetricDiff& d : c.diffs) {
    if (d.metric == metric) return &d;
  }
  return nullptr;
}

void AddDiffRows(TextTable& table, const FullReport& report,
                 std::span<const std::string_view> metrics) {
  for (const ComparisonReport& c : report.comparisons) {
    std::vector<std::string> abs_row = {
        fmt::format("Absolute Diff ({} -> {})", c.base_group, c.new_group)};
    std::vector<std::string> rel_row = {
        fmt::format("Relative Diff ({} -> {})", c.base_group, c.new_group)};
    for (const std::string_view metric : metrics) {
      const MetricDiff* d = FindDiff(c, metric);
      abs_row.push_back(d ? Cell(d->absolute_diff) : "");
      rel_row.push_back(d ? Cell(d->relative_diff) : "");
    }
    table.Rule();
    table.Add(std::move(abs_row));
    table.Add(std::move(rel_row));
  }
}

}  // namespace

std::string ManifestToJson(const ReportManifest& manifest) {
  json groups = json::array();
  for (const GroupSpec& g : manifest.groups) {
    groups.push_back({{"group_id", g.group_id}, {"annotators", g.annotators}});
  }
  json comparisons = json::array();
  for (const ComparisonSpec& c : manifest.comparisons) {
    comparisons.push_back({{"base", c.base_group}, {"new", c.new_group}});
  }
  const json root = {{"format", "adlabel-report-manifest"},
                     {"version", 1},
                     {"batch_id", manifest.batch_id},
                     {"items", manifest.items},
                     {"disclosed_ids", manifest.disclosed_ids},
                     {"groups", groups},
                     {"comparisons", comparisons}};
  return root.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

ReportManifest ParseManifest(std::string_view text) {
  const json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object()) {
    Fail(ErrorCode::kParse, "manifest is not a JSON object");
  }
  ReportManifest m;
  try {
    m.batch_id = root.value("batch_id", std::string());
    m.items = root.value("items", std::vector<std::string>{});
    m.disclosed_ids = root.value("disclosed_ids", std::vector<std::string>{});
    for (const json& g : root.at("groups")) {
      m.groups.push_back({g.at("group_id").get<std::string>(),
                          g.at("annotators").get<std::vector<std::string>>()});
    }
    for (const json& c : root.value("comparisons", json::array())) {
      m.comparisons.push_back(
          {c.at("base").get<std::string>(), c.at("new").get<std::string>()});
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, "malformed manifest: {}", e.what());
  }
  return m;
}

FullReport BuildReport(const LabelMatrix& matrix,
                       std::span<const std::string> disclosed_ids,
                       std::span<const GroupSpec> groups,
                       std::span<const ComparisonSpec> comparisons,
                       const std::map<std::string, Label>* predictions) {
  FullReport report;
  std::map<std::string, std::size_t> index;
  for (const GroupSpec& g : groups) {
    if (!index.emplace(g.group_id, report.groups.size()).second) {
      Fail(ErrorCode::kValidation, "group \"{}\" defined twice", g.group_id);
    }
    report.groups.push_back(GroupReport(matrix, disclosed_ids, g, predictions));
  }
  for (const ComparisonSpec& c : comparisons) {
    const auto base = index.find(c.base_group);
    const auto next = index.find(c.new_group);
    if (base == index.end() || next == index.end()) {
      Fail(ErrorCode::kValidation, "comparison {} -> {} names an unknown group",
           c.base_group, c.new_group);
    }
    report.comparisons.push_back(
        Compare(report.groups[base->second], report.groups[next->second]));
  }
  return report;
}

FullReport ReplayReport(std::string_view labels_csv,
                        const ReportManifest& manifest,
                        std::optional<std::string_view> predictions_csv) {
  const std::vector<LabelEntry> entries = ParseLabelFile(labels_csv);
  std::optional<std::vector<std::string>> items;
  if (!manifest.items.empty()) items = manifest.items;
  LabelMatrix matrix = LabelMatrix::FromEntries(entries, items);
  // Annotators that appear only in the manifest still get empty rows.
  std::set<std::string> known(matrix.annotators().begin(),
                              matrix.annotators().end());
  bool missing = false;
  for (const GroupSpec& g : manifest.groups) {
    for (const std::string& a : g.annotators) missing |= known.insert(a).second;
  }
  if (missing) {
    LabelMatrix widened({known.begin(), known.end()}, matrix.items());
    for (const LabelEntry& e : entries)
      widened.Set(e.annotator_id, e.post_id, e.label);
    matrix = std::move(widened);
  }

  std::optional<std::map<std::string, Label>> predictions;
  if (predictions_csv) {
    predictions.emplace();
    std::set<std::string> models;
    for (const detector::Prediction& p :
         detector::ParsePredictions(*predictions_csv)) {
      models.insert(p.model_id);
      (*predictions)[p.post_id] = p.label;
    }
    if (models.size() > 1) {
      Fail(ErrorCode::kValidation,
           "predictions file mixes {} models; pass one model's predictions",
           models.size());
    }
  }
  return BuildReport(matrix, manifest.disclosed_ids, manifest.groups,
                     manifest.comparisons,
                     predictions ? &*predictions : nullptr);
}

std::string ReportToJson(const FullReport& report) {
  json groups = json::array();
  for (const AgreementReport& r : report.groups) {
    json g = {{"group_id", r.group_id},
              {"annotator_count", r.annotator_count},
              {"alpha_pct", Optional(r.alpha_pct)},
              {"abs_pct", Optional(r.abs_pct)},
              {"one_disag_pct", Optional(r.one_disag_pct)},
              {"disclosed_acc_pct", Optional(r.disclosed_acc_pct)},
              {"sponsored_pct", Optional(r.sponsored_pct)},
              {"sponsored_pooled_pct", Optional(r.sponsored_pooled_pct)},
              {"notes", r.notes}};
    if (r.pairwise) {
      json pairs = json::array();
      for (const PairRecord& p : r.pairwise->pairs) {
        pairs.push_back({{"a", p.a},
                         {"b", p.b},
                         {"co_rated", p.co_rated},
                         {"abs_pct", p.abs_pct},
                         {"alpha_pct", p.alpha_pct}});
      }
      json skipped = json::array();
      for (const auto& [a, b] : r.pairwise->skipped) skipped.push_back({a, b});
      json summary = nullptr;
      if (const auto& s = r.pairwise->summary) {
        summary = {{"min_abs", s->min_abs},     {"max_abs", s->max_abs},
                   {"std_abs", s->std_abs},     {"min_alpha", s->min_alpha},
                   {"max_alpha", s->max_alpha}, {"std_alpha", s->std_alpha}};
      }
      g["pairwise"] = {
          {"pairs", pairs}, {"skipped", skipped}, {"summary", summary}};
    } else {
      g["pairwise"] = nullptr;
    }
    if (r.bias) {
      g["bias"] = {{"sponsored_pct", r.bias->sponsored_pct},
                   {"model_majority_agreement_pct",
                    r.bias->model_majority_agreement_pct},
                   {"majority_items", r.bias->majority_items},
                   {"tie_items_excluded", r.bias->tie_items_excluded},
                   {"unrated_items_excluded", r.bias->unrated_items_excluded}};
    } else {
      g["bias"] = nullptr;
    }
    groups.push_back(std::move(g));
  }
  json comparisons = json::array();
  for (const ComparisonReport& c : report.comparisons) {
    json diffs = json::array();
    for (const MetricDiff& d : c.diffs) {
      diffs.push_back({{"metric", d.metric},
                       {"base", Optional(d.base)},
                       {"new", Optional(d.next)},
                       {"absolute_diff", Optional(d.absolute_diff)},
                       {"relative_diff", Optional(d.relative_diff)}});
    }
    comparisons.push_back(
        {{"base", c.base_group}, {"new", c.new_group}, {"diffs", diffs}});
  }
  const json root = {{"groups", groups}, {"comparisons", comparisons}};
  return root.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

std::string ReportToText(const FullReport& report) {
  std::string out = "Agreement\n";
  TextTable agreement({"", "alpha", "Abs", "1-Disag", "Acc", "Sponsored", "#"});
  for (const AgreementReport& r : report.groups) {
    agreement.Add({r.group_id, Cell(r.alpha_pct), Cell(r.abs_pct),
                   Cell(r.one_disag_pct), Cell(r.disclosed_acc_pct),
                   Cell(r.sponsored_pct), std::to_string(r.annotator_count)});
  }
  constexpr std::string_view kAgreementMetrics[] = {
      "alpha", "abs", "one_disag", "disclosed_acc", "sponsored"};
  AddDiffRows(agreement, report, kAgreementMetrics);
  out += agreement.Render();

  out += "\nPairwise agreement\n";
  TextTable pairwise(
      {"", "Min Abs", "Max Abs", "+/-", "Min alpha", "Max alpha", "+/-"});
  for (const AgreementReport& r : report.groups) {
    std::optional<PairSummary> s;
    if (r.pairwise) s = r.pairwise->summary;
    const auto cell = [&](double PairSummary::* field) {
      return s ? Cell((*s).*field) : std::string("n/a");
    };
    pairwise.Add({r.group_id, cell(&PairSummary::min_abs),
                  cell(&PairSummary::max_abs), cell(&PairSummary::std_abs),
                  cell(&PairSummary::min_alpha), cell(&PairSummary::max_alpha),
                  cell(&PairSummary::std_alpha)});
  }
  constexpr std::string_view kPairMetrics[] = {
      "min_abs", "max_abs", "std_abs", "min_alpha", "max_alpha", "std_alpha"};
  AddDiffRows(pairwise, report, kPairMetrics);
  out += pairwise.Render();

  const bool any_bias =
      std::any_of(report.groups.begin(), report.groups.end(),
                  [](const AgreementReport& r) { return r.bias.has_value(); });
  if (any_bias) {
    out += "\nMajority agreement with model predictions\n";
    TextTable bias({"", "Sponsored", "Agreement", "Ties"});
    for (const AgreementReport& r : report.groups) {
      bias.Add({r.group_id, Cell(r.sponsored_pct),
                r.bias ? Cell(r.bias->model_majority_agreement_pct) : "n/a",
                r.bias ? std::to_string(r.bias->tie_items_excluded) : "n/a"});
    }
    constexpr std::string_view kBiasMetrics[] = {"sponsored",
                                                 "model_agreement"};
    AddDiffRows(bias, report, kBiasMetrics);
    out += bias.Render();
  }

  bool header = false;
  for (const AgreementReport& r : report.groups) {
    for (const std::string& note : r.notes) {
      if (!header) out += "\nNotes\n";
      header = true;
      out += fmt::format("  {}: {}\n", r.group_id, note);
    }
  }
  return out;
}

}  // namespace adlabel::agreement
