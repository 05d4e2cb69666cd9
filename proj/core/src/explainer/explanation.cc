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

#include "adlabel/explainer/explanation.h"

#include <algorithm>

#include "adlabel/common/error.h"
#include "adlabel/common/text.h"
#include "json.hpp"

namespace adlabel::explainer {
namespace {

using nlohmann::json;

constexpr std::string_view kIndicatorsPrefix = "key indicators";

bool IsMarkup(char c) {
  return c == '*' || c == '_' || c == '`' || c == '>' || c == '"' ||
         c == '\'' || c == '#' || c == '-';
}

std::string_view StripMarkup(std::string_view s) {
  s = text::TrimWhitespace(s);
  while (!s.empty() && IsMarkup(s.front()))
    s = text::TrimWhitespace(s.substr(1));
  while (!s.empty() && (IsMarkup(s.back()) || s.back() == '.' ||
                        s.back() == '!' || s.back() == ':')) {
    s = text::TrimWhitespace(s.substr(0, s.size() - 1));
  }
  return s;
}

std::vector<std::string_view> SplitLines(std::string_view raw) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= raw.size()) {
    std::size_t end = raw.find('\n', start);
    if (end == std::string_view::npos) end = raw.size();
    std::string_view line = raw.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

bool IsBlank(std::string_view line) {
  return text::TrimWhitespace(line).empty();
}

// Returns the text after "Key indicators:" when `line` is an indicators line.
std::optional<std::string_view> IndicatorsPayload(std::string_view line) {
  std::string_view s = text::TrimWhitespace(line);
  while (!s.empty() && (s.front() == '*' || s.front() == '-')) {
    s = text::TrimWhitespace(s.substr(1));
  }
  if (!text::StartsWithIgnoreCase(s, kIndicatorsPrefix)) return std::nullopt;
  s.remove_prefix(kIndicatorsPrefix.size());
  while (!s.empty() && (s.front() == '*' || s.front() == ' '))
    s.remove_prefix(1);
  if (s.empty() || s.front() != ':') return std::nullopt;
  s.remove_prefix(1);
  while (!s.empty() && s.front() == '*') s.remove_prefix(1);
  return text::TrimWhitespace(s);
}

struct QuoteStyle {
  char32_t open;
  char32_t close;
};

constexpr QuoteStyle kQuotes[] = {
    {U'\'', U'\''}, {U'"', U'"'}, {U'‘', U'’'}, {U'“', U'”'}};

bool ClosesPhrase(std::string_view s, std::size_t after) {
  if (after >= s.size()) return true;
  const char c = s[after];
  return c == ',' || c == '.' || c == ';' || c == ')' || c == ' ' || c == '\t';
}

std::vector<std::string> ParseIndicators(std::string_view payload) {
  std::vector<std::string> out;
  const std::string lowered = text::ToLower(StripMarkup(payload));
  if (lowered.empty() || lowered == "none" || lowered == "n/a") return out;

  std::size_t pos = 0;
  bool boundary = true;
  while (pos < payload.size()) {
    const text::CodePoint cp = text::DecodeUtf8(payload, pos);
    const QuoteStyle* style = nullptr;
    if (boundary) {
      for (const QuoteStyle& q : kQuotes) {
        if (q.open == cp.value) style = &q;
      }
    }
    if (style == nullptr) {
      boundary = cp.value == ' ' || cp.value == ',' || cp.value == ';' ||
                 cp.value == '(' || cp.value == '\t';
      pos += cp.length;
      continue;
    }
    const std::size_t begin = pos + cp.length;
    std::size_t scan = begin;
    std::optional<std::size_t> close;
    while (scan < payload.size()) {
      const text::CodePoint c = text::DecodeUtf8(payload, scan);
      if (c.value == style->close && scan > begin &&
          ClosesPhrase(payload, scan + c.length)) {
        close = scan;
        pos = scan + c.length;
        break;
      }
      scan += c.length;
    }
    if (!close) {
      pos = begin;
      boundary = false;
      continue;
    }
    out.emplace_back(payload.substr(begin, *close - begin));
    boundary = false;
  }
  if (!out.empty()) return out;

  // Unquoted lists: comma separated.
  std::string_view rest = StripMarkup(payload);
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    const std::string_view piece = StripMarkup(rest.substr(0, comma));
    if (!piece.empty()) out.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::string QuotePhrase(std::string_view phrase) {
  const char quote = phrase.find('\'') == std::string_view::npos ? '\'' : '"';
  std::string out(1, quote);
  out += phrase;
  out += quote;
  return out;
}

std::string IndicatorsLine(const std::vector<std::string>& indicators) {
  if (indicators.empty()) return "Key indicators: none.";
  std::string line = "Key indicators: ";
  for (std::size_t i = 0; i < indicators.size(); ++i) {
    if (i > 0) line += ", ";
    line += QuotePhrase(indicators[i]);
  }
  return line + ".";
}

}  // namespace

std::string_view ImpliedLabelPhrase(ImpliedLabel label) {
  switch (label) {
    case ImpliedLabel::kSponsored:
      return "Sponsored";
    case ImpliedLabel::kNotSponsored:
      return "Not sponsored";
    case ImpliedLabel::kLikelySponsored:
      return "Likely sponsored";
    case ImpliedLabel::kLikelyNotSponsored:
      return "Likely not sponsored";
  }
  return "Not sponsored";
}

Label ToBinary(ImpliedLabel label) {
  return label == ImpliedLabel::kSponsored ||
                 label == ImpliedLabel::kLikelySponsored
             ? Label::kSponsored
             : Label::kNonSponsored;
}

std::optional<ImpliedLabel> MatchLabelPhrase(std::string_view line) {
  std::string_view s = StripMarkup(line);
  if (text::StartsWithIgnoreCase(s, "label:")) s = StripMarkup(s.substr(6));
  std::string norm;
  bool space = false;
  for (const char c : text::ToLower(s)) {
    if (c == ' ' || c == '\t' || c == '-' || c == '_') {
      space = !norm.empty();
      continue;
    }
    if (space) norm += ' ';
    space = false;
    norm += c;
  }
  if (norm == "sponsored") return ImpliedLabel::kSponsored;
  if (norm == "not sponsored" || norm == "non sponsored" ||
      norm == "nonsponsored") {
    return ImpliedLabel::kNotSponsored;
  }
  if (norm == "likely sponsored") return ImpliedLabel::kLikelySponsored;
  if (norm == "likely not sponsored" || norm == "likely non sponsored" ||
      norm == "likely nonsponsored") {
    return ImpliedLabel::kLikelyNotSponsored;
  }
  return std::nullopt;
}

std::string_view SourceName(ExplanationSource source) {
  return source == ExplanationSource::kRemote ? "remote" : "local_fallback";
}

Explanation ParseExplanation(std::string_view raw, std::string_view post_id,
                             std::span<const std::string> phrasings) {
  const std::vector<std::string_view> lines = SplitLines(raw);
  std::size_t last = lines.size();
  while (last > 0 && IsBlank(lines[last - 1])) --last;
  if (last == 0) Fail(ErrorCode::kFormat, "empty response for {}", post_id);
  const std::string_view label_line = lines[last - 1];

  std::optional<ImpliedLabel> label;
  for (const std::string& phrase : phrasings) {
    if (text::EqualsIgnoreCase(StripMarkup(label_line), phrase)) {
      label = MatchLabelPhrase(phrase);
      break;
    }
  }
  if (!label) label = MatchLabelPhrase(label_line);
  if (!label) {
    Fail(ErrorCode::kFormat, "no recognizable label line in response for {}",
         post_id);
  }

  Explanation e;
  e.post_id = std::string(post_id);
  e.implied_label = *label;
  std::size_t first_rationale = 0;
  for (std::size_t i = 0; i + 1 < last; ++i) {
    if (const auto payload = IndicatorsPayload(lines[i])) {
      e.key_indicators = ParseIndicators(*payload);
      first_rationale = i + 1;
      break;
    }
  }
  std::string rationale;
  for (std::size_t i = first_rationale; i + 1 < last; ++i) {
    if (!rationale.empty() || !IsBlank(lines[i])) {
      rationale.append(lines[i]);
      rationale += '\n';
    }
  }
  e.rationale = std::string(text::TrimWhitespace(rationale));
  if (e.rationale.empty()) {
    Fail(ErrorCode::kFormat, "response for {} has no rationale", post_id);
  }
  return e;
}

std::string SerializeExplanation(const Explanation& explanation) {
  return IndicatorsLine(explanation.key_indicators) + "\n" +
         explanation.rationale + "\n" +
         std::string(ImpliedLabelPhrase(explanation.implied_label));
}

std::string FormatForDisplay(const Explanation& explanation) {
  std::string out = IndicatorsLine(explanation.key_indicators);
  const std::string rationale = StripLabelLines(explanation.rationale);
  if (!rationale.empty()) out += "\n" + rationale;
  return out;
}

std::string StripLabelLines(std::string_view text) {
  std::string out;
  for (const std::string_view line : SplitLines(text)) {
    const std::string_view trimmed = StripMarkup(line);
    if (MatchLabelPhrase(line) ||
        text::StartsWithIgnoreCase(trimmed, "label:")) {
      continue;
    }
    out.append(line);
    out += '\n';
  }
  return std::string(text::TrimWhitespace(out));
}

std::string ExplanationToRecord(const Explanation& e) {
  const json record = {
      {"post_id", e.post_id},
      {"key_indicators", e.key_indicators},
      {"rationale", e.rationale},
      {"implied_label", ImpliedLabelPhrase(e.implied_label)},
      {"label", LabelName(ToBinary(e.implied_label))},
      {"source", SourceName(e.source)},
      {"producer", e.producer},
  };
  return record.dump(-1, ' ', false, json::error_handler_t::replace);
}

Explanation ParseExplanationRecord(std::string_view line) {
  const json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (record.is_discarded() || !record.is_object()) {
    Fail(ErrorCode::kParse, "explanation record is not a JSON object");
  }
  Explanation e;
  try {
    e.post_id = record.at("post_id").get<std::string>();
    e.key_indicators =
        record.at("key_indicators").get<std::vector<std::string>>();
    e.rationale = record.at("rationale").get<std::string>();
    const auto implied =
        MatchLabelPhrase(record.at("implied_label").get<std::string>());
    if (!implied) Fail(ErrorCode::kParse, "unknown implied_label");
    e.implied_label = *implied;
    const std::string source = record.at("source").get<std::string>();
    if (source == "remote") {
      e.source = ExplanationSource::kRemote;
    } else if (source == "local_fallback") {
      e.source = ExplanationSource::kLocalFallback;
    } else {
      Fail(ErrorCode::kParse, "unknown source \"{}\"", source);
    }
    e.producer = record.value("producer", std::string());
  } catch (const json::exception& ex) {
    Fail(ErrorCode::kParse, "malformed explanation record: {}", ex.what());
  }
  return e;
}

}  // namespace adlabel::explainer
