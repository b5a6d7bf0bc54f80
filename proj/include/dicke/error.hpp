// Copyright 2026 The dicke-critic Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  NonHermitian,
  NegativeRate,
  DegenerateSteadyState,
  NotIntegrable,
  NoConvergence,
  NoClosedForm,
  StepUnderflow,
  DimensionGuard,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Text-format error with a 1-based position (line 0 when not from a file).
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorKind::InvalidArgument, format(line, column, message)),
        line_(line),
        column_(column),
        message_(message) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string format(int line, int column, const std::string& message) {
    std::string where = line > 0 ? std::to_string(line) + ":" : std::string();
    return where + std::to_string(column) + ": " + message;
  }

  int line_;
  int column_;
  std::string message_;
};

}  // namespace dicke
