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

#include "uicheck/integrand.hpp"

#include <algorithm>
#include <cmath>

#include "uicheck/errors.hpp"
#include "uicheck/expr.hpp"

namespace uic {

Integrand::Integrand(Kind kind, double level) : kind_(kind), level_(level) {
  if (!std::isfinite(level) || level < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "level must be a finite nonnegative number");
  }
}

Integrand Integrand::phi(std::vector<std::uint64_t> thresholds) {
  if (thresholds.empty()) throw Error(ErrorKind::InvalidArgument, "phi needs at least one threshold");
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (thresholds[i] <= thresholds[i - 1]) {
      throw Error(ErrorKind::InvalidArgument, "phi thresholds must be strictly increasing");
    }
  }
  Integrand f(Kind::Phi, 0.0);
  f.thresholds_ = std::make_shared<const std::vector<std::uint64_t>>(std::move(thresholds));
  return f;
}

const std::vector<std::uint64_t>& Integrand::thresholds() const {
  static const std::vector<std::uint64_t> kEmpty;
  return thresholds_ ? *thresholds_ : kEmpty;
}

double Integrand::operator()(double x) const {
  const double ax = std::fabs(x);
  switch (kind_) {
    case Kind::Signed: return x;
    case Kind::Abs: return ax;
    case Kind::Truncated: return ax >= level_ ? ax : 0.0;
    case Kind::Excess: return ax > level_ ? ax - level_ : 0.0;
    case Kind::Capped: return std::min(ax, level_);
    case Kind::TailProb: return ax > level_ ? 1.0 : 0.0;
    case Kind::AtLeastProb: return ax >= level_ ? 1.0 : 0.0;
    case Kind::Lower: return ax <= level_ ? ax : 0.0;
    case Kind::Phi: {
      const double fl = std::floor(ax);
      double s = 0.0;
      for (std::uint64_t nk : *thresholds_) {
        const double d = fl - static_cast<double>(nk);
        if (d <= 0.0) break;
        s += d;
      }
      return s;
    }
  }
  return 0.0;
}

Integrand::Dominance Integrand::dominance() const {
  switch (kind_) {
    case Kind::Signed: return Dominance::SymmetricByAbs;
    case Kind::Capped:
    case Kind::TailProb:
    case Kind::AtLeastProb: return Dominance::ByConstant;
    case Kind::Phi: return Dominance::ByMultipleOfAbs;
    default: return Dominance::ByAbs;
  }
}

double Integrand::dominance_factor() const {
  switch (kind_) {
    case Kind::Capped: return level_;
    case Kind::TailProb:
    case Kind::AtLeastProb: return 1.0;
    case Kind::Phi: return static_cast<double>(thresholds_->size());
    default: return 1.0;
  }
}

std::string Integrand::describe() const {
  const std::string a = format_double(level_);
  switch (kind_) {
    case Kind::Signed: return "X";
    case Kind::Abs: return "|X|";
    case Kind::Truncated: return "|X|1{|X|>=" + a + "}";
    case Kind::Excess: return "(|X|-" + a + ")^+";
    case Kind::Capped: return "min(|X|," + a + ")";
    case Kind::TailProb: return "1{|X|>" + a + "}";
    case Kind::AtLeastProb: return "1{|X|>=" + a + "}";
    case Kind::Lower: return "|X|1{|X|<=" + a + "}";
    case Kind::Phi: return "phi(|X|)";
  }
  return "?";
}

}  // namespace uic
