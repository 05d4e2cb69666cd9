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

#ifndef ADLABEL_COMMON_ERROR_H_
#define ADLABEL_COMMON_ERROR_H_

#include <fmt/format.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace adlabel {

enum class ErrorCode {
  kParse,       // malformed input; carries a line/row when known
  kValidation,  // well-formed but violates a contract
  kNotFound,
  kConflict,         // duplicate id / already exists
  kCapacity,         // not enough material to satisfy a request
  kUndefinedMetric,  // a statistic has no eligible data
  kPrecondition,
  kCredential,   // endpoint rejected or lacks credentials
  kTransport,    // network failure or retries exhausted
  kFormat,       // model response not in the expected shape
  kUnavailable,  // no route produced a result
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message,
        std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(line ? fmt::format("line {}: {}", *line, message)
                                : message),
        code_(code),
        line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  // 1-based line or row number for parse errors.
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

template <typename... Args>
[[noreturn]] void Fail(ErrorCode code, fmt::format_string<Args...> format,
                       Args&&... args) {
  throw Error(code, fmt::format(format, std::forward<Args>(args)...));
}

template <typename... Args>
[[noreturn]] void FailAtLine(std::size_t line,
                             fmt::format_string<Args...> format,
                             Args&&... args) {
  throw Error(ErrorCode::kParse,
              fmt::format(format, std::forward<Args>(args)...), line);
}

}  // namespace adlabel

#endif  // ADLABEL_COMMON_ERROR_H_
