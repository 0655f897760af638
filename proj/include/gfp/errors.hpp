// Copyright 2026 The gfp Authors
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

#ifndef GFP_ERRORS_HPP_
#define GFP_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gfp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Conditioning on an event of probability zero, e.g. rho(theta) = 0.
class UndefinedConditionalError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Caller misuse that is not a numeric domain problem (empty input, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// A truncated sum or scan hit its iteration cap.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error(message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gfp

#endif  // GFP_ERRORS_HPP_
