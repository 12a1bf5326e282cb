// Copyright 2026 The Panpredict Authors.
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

#ifndef PANPREDICT_ERRORS_H_
#define PANPREDICT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace panpredict {

// Malformed input: bad files, configs, or argument values. CLI exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parse failure with the offending (1-based) row, when known.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, int row)
      : ValidationError(row > 0 ? what + " (row " + std::to_string(row) + ")"
                                : what),
        row_(row) {}
  int row() const { return row_; }

 private:
  int row_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Conditioning on a group with zero probability mass.
class DegenerateGroupError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A sampling oracle ran past the configured sample budget. CLI exit code 3.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace panpredict

#endif  // PANPREDICT_ERRORS_H_
