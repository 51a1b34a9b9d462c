// Copyright 2026 The abtedit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace abtedit {

// Base class for every error raised by the library. Stuck transitions and
// match failures are not errors; they are returned as values.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (spec documents, trees, scripts, conditions).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at " + std::to_string(line) + ":" +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A language definition that parses but violates a structural rule.
class SpecError : public Error {
 public:
  using Error::Error;
};

// A name that does not resolve to an operator, or a literal that does not
// fit the operator's parameter kind.
class UnknownOperatorError : public SpecError {
 public:
  using SpecError::SpecError;
};

// Ill-sorted trees, unbound variables, cursor-count violations.
class SortError : public Error {
 public:
  using Error::Error;
};

// Ill-typed lambda terms.
class TypeError : public Error {
 public:
  using Error::Error;
};

}  // namespace abtedit
