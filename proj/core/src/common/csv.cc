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

#include "adlabel/common/csv.h"

#include "adlabel/common/error.h"

namespace adlabel::csv {

Table Parse(std::string_view contents) {
  Table table;
  Row row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  bool have_header = false;
  std::size_t line = 1;
  std::size_t row_line = 1;

  const auto finish_row = [&] {
    const bool blank = row.empty() && !field_started && field.empty();
    if (!blank) {
      row.push_back(std::move(field));
      if (!have_header) {
        table.header = std::move(row);
        have_header = true;
      } else {
        if (row.size() != table.header.size()) {
          FailAtLine(row_line, "expected {} fields, got {}",
                     table.header.size(), row.size());
        }
        table.rows.push_back(std::move(row));
        table.line_numbers.push_back(row_line);
      }
    }
    row.clear();
    field.clear();
    field_started = false;
  };

  for (std::size_t i = 0; i < contents.size(); ++i) {
    const char c = contents[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < contents.size() && contents[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          FailAtLine(line, "stray quote inside field");
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        finish_row();
        ++line;
        row_line = line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) {
    FailAtLine(row_line, "unterminated quoted field");
  }
  finish_row();
  if (!have_header) Fail(ErrorCode::kParse, "missing header row");
  return table;
}

std::size_t ColumnIndex(const Table& table, std::string_view name) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == name) return i;
  }
  Fail(ErrorCode::kParse, "missing column \"{}\"", name);
}

std::string EscapeField(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string FormatRow(const Row& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += EscapeField(row[i]);
  }
  out.push_back('\n');
  return out;
}

}  // namespace adlabel::csv
