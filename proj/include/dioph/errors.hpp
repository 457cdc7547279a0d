// Copyright 2026 The dioph Authors.
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

#ifndef DIOPH_ERRORS_HPP_
#define DIOPH_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dioph {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The adaptive precision loop reached its ceiling without certifying a
// discrete decision (a floor, a nearest integer, a ceiling).
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

// A request exceeds a hard resource ceiling (bits, digits).
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// Arguments were supplied in the wrong order (e.g. q1 >= q2).
class ArgumentOrder : public Error {
 public:
  using Error::Error;
};

// A theorem hypothesis does not hold for the supplied parameters.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

// A planning problem has no solution.
class Infeasible : public Error {
 public:
  using Error::Error;
};

// A constructed continued-fraction term exceeded its digit budget.
class OverflowGuard : public Error {
 public:
  OverflowGuard(const std::string& what, std::size_t term_index)
      : Error(what), term_index_(term_index) {}
  std::size_t term_index() const { return term_index_; }

 private:
  std::size_t term_index_;
};

// Malformed input document (JSON, CSV, config, decimal file).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dioph

#endif  // DIOPH_ERRORS_HPP_
