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

#ifndef ADLABEL_COMMON_CSV_H_
#define ADLABEL_COMMON_CSV_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace adlabel::csv {

using Row = std::vector<std::string>;

// A parsed delimited file. `line_numbers[i]` is the 1-based physical line on
// which `rows[i]` starts; the header is line 1.
struct Table {
  Row header;
  std::vector<Row> rows;
  std::vector<std::size_t> line_numbers;
};

// RFC 4180 style: comma separated, double-quoted fields may contain commas,
// quotes ("") and newlines. Blank lines are skipped. Every row must have the
// header's width. Errors are kParse with the offending line.
Table Parse(std::string_view contents);

// Index of `name` in the header; kParse when the column is missing.
std::size_t ColumnIndex(const Table& table, std::string_view name);

// Quotes a field only when it needs it.
std::string EscapeField(std::string_view field);

std::string FormatRow(const Row& row);

}  // namespace adlabel::csv

#endif  // ADLABEL_COMMON_CSV_H_
