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

#ifndef UICHECK_INTEGRAND_HPP
#define UICHECK_INTEGRAND_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace uic {

/// The closed set of functions f such that the library evaluates E[f(X)].
///
/// Levels are finite and nonnegative; infinite levels are rejected.
class Integrand {
 public:
  enum class Kind {
    Signed,       // X
    Abs,          // |X|
    Truncated,    // |X| 1{|X| >= a}
    Excess,       // (|X| - a)^+
    Capped,       // |X| ^ a  (minimum)
    TailProb,     // 1{|X| > a}
    AtLeastProb,  // 1{|X| >= a}
    Lower,        // |X| 1{|X| <= a}
    Phi,          // sum_k (floor|X| - n_k)^+
  };

  static Integrand signed_value() { return Integrand(Kind::Signed, 0.0); }
  static Integrand abs() { return Integrand(Kind::Abs, 0.0); }
  static Integrand truncated(double a) { return Integrand(Kind::Truncated, a); }
  static Integrand excess(double a) { return Integrand(Kind::Excess, a); }
  static Integrand capped(double a) { return Integrand(Kind::Capped, a); }
  static Integrand tail_prob(double a) { return Integrand(Kind::TailProb, a); }
  static Integrand at_least_prob(double a) { return Integrand(Kind::AtLeastProb, a); }
  static Integrand lower(double a) { return Integrand(Kind::Lower, a); }
  static Integrand phi(std::vector<std::uint64_t> thresholds);

  Kind kind() const { return kind_; }
  double level() const { return level_; }
  const std::vector<std::uint64_t>& thresholds() const;

  double operator()(double x) const;

  enum class Dominance { ByAbs, ByConstant, ByMultipleOfAbs, SymmetricByAbs };
  /// How |f(X)| is dominated, used to bound truncated countable sums.
  Dominance dominance() const;
  /// The constant (ByConstant) or the multiplier (ByMultipleOfAbs).
  double dominance_factor() const;

  std::string describe() const;

 private:
  Integrand(Kind kind, double level);
  Kind kind_;
  double level_;
  std::shared_ptr<const std::vector<std::uint64_t>> thresholds_;
};

}  // namespace uic

#endif  // UICHECK_INTEGRAND_HPP
