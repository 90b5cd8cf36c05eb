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

#include "uicheck/eval_result.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uicheck/errors.hpp"

namespace uic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<std::uint64_t> max_horizon(std::optional<std::uint64_t> a, std::optional<std::uint64_t> b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

}  // namespace

std::string_view to_string(Certificate c) {
  switch (c) {
    case Certificate::Exact: return "exact";
    case Certificate::LowerBound: return "lower_bound";
    case Certificate::UpperBound: return "upper_bound";
    case Certificate::Bracket: return "bracket";
  }
  return "unknown";
}

EvalResult EvalResult::exact(double v, std::optional<std::uint64_t> horizon) {
  return {v, Certificate::Exact, v, v, horizon};
}

EvalResult EvalResult::lower_bound(double v, std::optional<std::uint64_t> horizon) {
  return {v, Certificate::LowerBound, v, kInf, horizon};
}

EvalResult EvalResult::upper_bound(double v, std::optional<std::uint64_t> horizon) {
  return {v, Certificate::UpperBound, -kInf, v, horizon};
}

EvalResult EvalResult::bracket(double lo, double hi, std::optional<std::uint64_t> horizon) {
  if (!(lo <= hi)) throw Error(ErrorKind::InvalidArgument, "bracket requires lo <= hi");
  return {lo, Certificate::Bracket, lo, hi, horizon};
}

double EvalResult::lower() const {
  switch (certificate) {
    case Certificate::Exact: return value;
    case Certificate::LowerBound: return value;
    case Certificate::UpperBound: return -kInf;
    case Certificate::Bracket: return lo;
  }
  return -kInf;
}

double EvalResult::upper() const {
  switch (certificate) {
    case Certificate::Exact: return value;
    case Certificate::LowerBound: return kInf;
    case Certificate::UpperBound: return value;
    case Certificate::Bracket: return hi;
  }
  return kInf;
}

EvalResult from_interval(double lo, double hi, bool all_exact, std::optional<std::uint64_t> horizon) {
  if (all_exact && lo == hi) return EvalResult::exact(lo, horizon);
  if (hi == kInf && lo == -kInf) {
    throw Error(ErrorKind::InvalidArgument, "result unbounded on both sides");
  }
  if (hi == kInf) return EvalResult::lower_bound(lo, horizon);
  if (lo == -kInf) return EvalResult::upper_bound(hi, horizon);
  return EvalResult::bracket(lo, hi, horizon);
}

EvalResult sup_of(std::span<const EvalResult> parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "supremum over an empty set");
  double lo = -kInf, hi = -kInf;
  bool all_exact = true;
  std::optional<std::uint64_t> horizon;
  for (const auto& p : parts) {
    lo = std::max(lo, p.lower());
    hi = std::max(hi, p.upper());
    all_exact = all_exact && p.is_exact();
    horizon = max_horizon(horizon, p.horizon_used);
  }
  return from_interval(lo, hi, all_exact, horizon);
}

EvalResult inf_of(std::span<const EvalResult> parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "infimum over an empty set");
  double lo = kInf, hi = kInf;
  bool all_exact = true;
  std::optional<std::uint64_t> horizon;
  for (const auto& p : parts) {
    lo = std::min(lo, p.lower());
    hi = std::min(hi, p.upper());
    all_exact = all_exact && p.is_exact();
    horizon = max_horizon(horizon, p.horizon_used);
  }
  return from_interval(lo, hi, all_exact, horizon);
}

}  // namespace uic
