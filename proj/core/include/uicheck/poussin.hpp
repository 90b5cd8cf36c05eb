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

#ifndef UICHECK_POUSSIN_HPP
#define UICHECK_POUSSIN_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "uicheck/family.hpp"

namespace uic {

/// The step function phi(t) = sum_k (floor(t) - n_k)^+ for strictly
/// increasing positive integer thresholds n_1 < ... < n_K.
///
/// phi is nonnegative, nondecreasing, right-continuous and vanishes below
/// n_1 + 1; phi(n)/n is nondecreasing on the integers and tends to K.
class PhiFunction {
 public:
  explicit PhiFunction(std::vector<std::uint64_t> thresholds);

  const std::vector<std::uint64_t>& thresholds() const { return thresholds_; }
  std::size_t count() const { return thresholds_.size(); }

  /// O(K). Requires t >= 0.
  double operator()(double t) const;
  /// phi(n)/n.
  double growth_ratio(std::uint64_t n) const;

  Integrand as_integrand() const { return Integrand::phi(thresholds_); }

 private:
  std::vector<std::uint64_t> thresholds_;
};

inline constexpr std::uint64_t kDefaultSearchCap = std::uint64_t{1} << 20;
inline constexpr int kDefaultPhiCount = 20;

/// Smallest strictly increasing n_1 < ... < n_K with
/// sup_X E[(|X| - n_k)^+] < 2^-k, each n_k minimal given n_{k-1}. Uses the
/// upper end of each evaluation, so bracketed values are handled
/// conservatively. Throws SearchCapExceeded.
PhiFunction find_thresholds(const Family& k, int count = kDefaultPhiCount,
                            std::uint64_t search_cap = kDefaultSearchCap, const Horizons& h = {});

struct PhiTerm {
  std::uint64_t threshold;
  double value;   // sup_X E[(|X| - n_k)^+]
  double budget;  // 2^-k
};

struct GrowthRow {
  std::uint64_t n;
  double ratio;  // phi(n)/n
};

struct PhiVerification {
  double sup_phi = 0.0;  // sup_X E[phi(|X|)]
  double budget = 0.0;   // sum_k 2^-k = 1 - 2^-K
  bool budget_checked = false;
  std::vector<PhiTerm> terms;
  /// Worst (sum_k E[(|X|-n_k)^+] - E[phi(|X|)]) over members; >= -1e-9.
  double subadditivity_slack = 0.0;
  std::vector<GrowthRow> growth;
  bool growth_nondecreasing = true;
};

enum class PhiProvenance { Searched, External };

/// Evaluates sup_X E[phi(|X|)], checks it against the term-by-term bound
/// sum_k E[(|X| - n_k)^+] for every member, and tabulates phi(n)/n on a
/// geometric grid. For searched thresholds also asserts the 2^-k budgets.
/// Throws BudgetViolation.
PhiVerification verify_phi(const Family& k, const PhiFunction& phi, PhiProvenance provenance,
                           const Horizons& h = {});

/// True when lowering any single threshold by one (keeping the list strictly
/// increasing and positive) breaks its 2^-k bound.
bool thresholds_minimal(const Family& k, const PhiFunction& phi, const Horizons& h = {});

struct WitnessRow {
  double level;
  double ui;     // sup_X E[|X| 1{|X| >= a}]
  double bound;  // sup_phi * c(a) / phi(a)
};

struct SufficiencyReport {
  double sup_phi = 0.0;
  std::vector<WitnessRow> rows;
  std::size_t skipped = 0;  // levels with phi(a) = 0
};

/// Checks the Markov-type consequence of a finite sup_X E[phi(|X|)]:
/// on {|X| >= a}, |X| <= c(a) phi(|X|) / phi(a), so the UI profile at a is at
/// most sup_phi c(a) / phi(a). c(a) = a for integer a and integer-valued
/// members; floor(a) + 1 otherwise, since phi is constant on [n, n+1).
/// Throws WitnessViolation.
SufficiencyReport check_sufficiency_witness(const Family& k, const PhiFunction& phi, std::span<const double> levels,
                                            const Horizons& h = {}, double tol = 1e-9);

}  // namespace uic

#endif  // UICHECK_POUSSIN_HPP
