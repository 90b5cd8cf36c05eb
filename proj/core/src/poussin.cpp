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

#include "uicheck/poussin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "uicheck/errors.hpp"
#include "uicheck/expr.hpp"
#include "uicheck/summation.hpp"

namespace uic {

namespace {

EvalResult sup_members(const Family& k, const Integrand& f, const Horizons& h) {
  std::vector<EvalResult> parts;
  parts.reserve(k.members().size());
  for (const auto& x : k.members()) parts.push_back(k.context().evaluate(f, x, h));
  return sup_of(parts);
}

// Upper end of sup_X E[(|X| - n)^+].
double excess_upper(const Family& k, std::uint64_t n, const Horizons& h) {
  return sup_members(k, Integrand::excess(static_cast<double>(n)), h).upper();
}

}  // namespace

PhiFunction::PhiFunction(std::vector<std::uint64_t> thresholds) : thresholds_(std::move(thresholds)) {
  if (thresholds_.empty()) throw Error(ErrorKind::InvalidArgument, "phi needs at least one threshold");
  if (thresholds_.front() < 1) throw Error(ErrorKind::InvalidArgument, "phi thresholds must be positive");
  for (std::size_t i = 1; i < thresholds_.size(); ++i) {
    if (thresholds_[i] <= thresholds_[i - 1]) {
      throw Error(ErrorKind::InvalidArgument, "phi thresholds must be strictly increasing");
    }
  }
}

double PhiFunction::operator()(double t) const {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "phi is defined on [0, inf)");
  const double fl = std::floor(t);
  double s = 0.0;
  for (std::uint64_t nk : thresholds_) {
    const double d = fl - static_cast<double>(nk);
    if (d <= 0.0) break;
    s += d;
  }
  return s;
}

double PhiFunction::growth_ratio(std::uint64_t n) const {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "phi(n)/n needs n >= 1");
  return (*this)(static_cast<double>(n)) / static_cast<double>(n);
}

PhiFunction find_thresholds(const Family& k, int count, std::uint64_t search_cap, const Horizons& h) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "need at least one threshold");
  std::vector<std::uint64_t> thresholds;
  thresholds.reserve(static_cast<std::size_t>(count));
  for (int j = 1; j <= count; ++j) {
    const double budget = std::ldexp(1.0, -j);
    const std::uint64_t start = thresholds.empty() ? 1 : thresholds.back() + 1;
    auto fits = [&](std::uint64_t n) { return excess_upper(k, n, h) < budget; };
    if (start > search_cap) {
      throw SearchCapExceeded(j, excess_upper(k, search_cap, h),
                              "threshold " + std::to_string(j) + " would exceed the search cap");
    }
    if (fits(start)) {
      thresholds.push_back(start);
      continue;
    }
    // Gallop to bracket the first fitting n, then bisect: lo fails, hi fits.
    std::uint64_t lo = start, hi = start, step = 1;
    for (;;) {
      hi = std::min(search_cap, lo + step);
      if (fits(hi)) break;
      if (hi == search_cap) {
        const double last = excess_upper(k, search_cap, h);
        throw SearchCapExceeded(j, last,
                                "no n <= " + std::to_string(search_cap) + " with sup E[(|X|-n)^+] < 2^-" +
                                    std::to_string(j) + "; reached " + format_double(last));
      }
      lo = hi;
      step *= 2;
    }
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      (fits(mid) ? hi : lo) = mid;
    }
    thresholds.push_back(hi);
  }
  return PhiFunction(std::move(thresholds));
}

PhiVerification verify_phi(const Family& k, const PhiFunction& phi, PhiProvenance provenance, const Horizons& h) {
  PhiVerification v;
  const Integrand phi_f = phi.as_integrand();
  const EvalResult sup_phi = sup_members(k, phi_f, h);
  v.sup_phi = sup_phi.value;
  v.budget = 1.0 - std::ldexp(1.0, -static_cast<int>(phi.count()));
  v.budget_checked = provenance == PhiProvenance::Searched;

  const auto& t = phi.thresholds();
  for (std::size_t j = 0; j < t.size(); ++j) {
    PhiTerm term{t[j], excess_upper(k, t[j], h), std::ldexp(1.0, -static_cast<int>(j + 1))};
    if (v.budget_checked && !(term.value < term.budget)) {
      throw Error(ErrorKind::BudgetViolation, "term " + std::to_string(j + 1) + " at n=" + std::to_string(t[j]) +
                                                  " is " + format_double(term.value) + ", not below " +
                                                  format_double(term.budget));
    }
    v.terms.push_back(term);
  }
  if (v.budget_checked && sup_phi.upper() > v.budget) {
    throw Error(ErrorKind::BudgetViolation,
                "sup E[phi(|X|)] = " + format_double(sup_phi.upper()) + " exceeds " + format_double(v.budget));
  }

  v.subadditivity_slack = std::numeric_limits<double>::infinity();
  for (const auto& x : k.members()) {
    const double lhs = k.context().evaluate(phi_f, x, h).lower();
    CompensatedSum rhs;
    for (std::uint64_t nk : t) rhs += k.context().evaluate(Integrand::excess(static_cast<double>(nk)), x, h).upper();
    v.subadditivity_slack = std::min(v.subadditivity_slack, rhs.value() - lhs);
  }
  if (v.subadditivity_slack < -1e-9) {
    throw Error(ErrorKind::BudgetViolation, "E[phi(|X|)] exceeds sum_k E[(|X|-n_k)^+] by " +
                                                format_double(-v.subadditivity_slack));
  }

  // phi(n)/n on 1, 2, 4, ... well past the last threshold.
  const std::uint64_t last = t.back();
  int top = 8;
  while ((std::uint64_t{1} << top) < last && top < 54) ++top;
  top = std::min(top + 8, 62);
  for (int j = 0; j <= top; ++j) {
    const std::uint64_t n = std::uint64_t{1} << j;
    const GrowthRow row{n, phi.growth_ratio(n)};
    if (!v.growth.empty() && row.ratio < v.growth.back().ratio) v.growth_nondecreasing = false;
    v.growth.push_back(row);
  }
  return v;
}

bool thresholds_minimal(const Family& k, const PhiFunction& phi, const Horizons& h) {
  const auto& t = phi.thresholds();
  for (std::size_t j = 0; j < t.size(); ++j) {
    const std::uint64_t floor_value = j == 0 ? 1 : t[j - 1] + 1;
    if (t[j] <= floor_value) continue;  // cannot be lowered
    const double budget = std::ldexp(1.0, -static_cast<int>(j + 1));
    if (excess_upper(k, t[j] - 1, h) < budget) return false;
  }
  return true;
}

SufficiencyReport check_sufficiency_witness(const Family& k, const PhiFunction& phi, std::span<const double> levels,
                                            const Horizons& h, double tol) {
  check_levels(levels);
  SufficiencyReport report;
  report.sup_phi = sup_members(k, phi.as_integrand(), h).upper();
  const bool integer_members = std::all_of(k.members().begin(), k.members().end(),
                                           [](const RandomVariable& x) { return x.integer_valued(); });
  for (double a : levels) {
    const double pa = phi(a);
    if (pa <= 0.0) {
      ++report.skipped;
      continue;
    }
    const double c = (integer_members && std::floor(a) == a) ? a : std::floor(a) + 1.0;
    WitnessRow row{a, sup_members(k, Integrand::truncated(a), h).lower(), report.sup_phi * c / pa};
    if (row.ui > row.bound + tol) {
      throw Error(ErrorKind::WitnessViolation, "at level " + format_double(a) + " the UI profile " +
                                                   format_double(row.ui) + " exceeds the phi bound " +
                                                   format_double(row.bound));
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace uic
