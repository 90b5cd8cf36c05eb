// Copyright 2026 The uicheck Authors
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

#ifndef UICHECK_ERRORS_HPP
#define UICHECK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace uic {

enum class ErrorKind {
  InvalidArgument,
  SpaceMismatch,
  MissingTailBound,
  Normalization,
  NegativeWeight,
  TailBound,
  SandwichViolation,
  InconsistentProfiles,
  UnsupportedIntegrand,
  AxiomViolation,
  SearchCapExceeded,
  BudgetViolation,
  WitnessViolation,
  // expression language
  Syntax,
  UnknownFunction,
  Arity,
  Domain,
  DivByZero,
  Overflow,
  // model files
  JsonSyntax,
  Schema,
  UnresolvedName,
  DuplicateName,
  UnknownPlugin,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for the library. Every failure carries a kind so callers
/// (and tests) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Error with a location: a byte offset for expressions, a JSON pointer for
/// model files.
class LocatedError : public Error {
 public:
  LocatedError(ErrorKind kind, std::string location, const std::string& what)
      : Error(kind, location.empty() ? what : location + ": " + what),
        location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

/// Thrown by the sandwich check. Keeps the three offending values.
class SandwichViolation : public Error {
 public:
  SandwichViolation(double lo, double mid, double hi, const std::string& what)
      : Error(ErrorKind::SandwichViolation, what), lo_(lo), mid_(mid), hi_(hi) {}

  double lo() const noexcept { return lo_; }
  double mid() const noexcept { return mid_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_, mid_, hi_;
};

/// Thrown when the threshold search runs past its cap.
class SearchCapExceeded : public Error {
 public:
  SearchCapExceeded(int k, double last_value, const std::string& what)
      : Error(ErrorKind::SearchCapExceeded, what), k_(k), last_value_(last_value) {}

  int k() const noexcept { return k_; }
  double last_value() const noexcept { return last_value_; }

 private:
  int k_;
  double last_value_;
};

}  // namespace uic

#endif  // UICHECK_ERRORS_HPP
