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

#ifndef UICHECK_EVAL_RESULT_HPP
#define UICHECK_EVAL_RESULT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace uic {

enum class Certificate { Exact, LowerBound, UpperBound, Bracket };

std::string_view to_string(Certificate c);

/// A numerical value together with how much of it is known.
///
/// `value` is the point estimate: the exact value, the one-sided bound, or
/// the lower end of a bracket. `lower()`/`upper()` give the enclosing
/// interval, unbounded on the unknown side.
struct EvalResult {
  double value = 0.0;
  Certificate certificate = Certificate::Exact;
  double lo = 0.0;
  double hi = 0.0;
  std::optional<std::uint64_t> horizon_used;

  static EvalResult exact(double v, std::optional<std::uint64_t> horizon = std::nullopt);
  static EvalResult lower_bound(double v, std::optional<std::uint64_t> horizon = std::nullopt);
  static EvalResult upper_bound(double v, std::optional<std::uint64_t> horizon = std::nullopt);
  /// Requires lo <= hi.
  static EvalResult bracket(double lo, double hi, std::optional<std::uint64_t> horizon = std::nullopt);

  bool is_exact() const { return certificate == Certificate::Exact; }
  double lower() const;
  double upper() const;
};

/// Supremum of several results; certificate is the weakest among inputs.
EvalResult sup_of(std::span<const EvalResult> parts);
/// Infimum of several results.
EvalResult inf_of(std::span<const EvalResult> parts);
/// Builds a result from an interval. `all_exact` keeps the exact label when
/// every contributor was exact.
EvalResult from_interval(double lo, double hi, bool all_exact, std::optional<std::uint64_t> horizon);

}  // namespace uic

#endif  // UICHECK_EVAL_RESULT_HPP
