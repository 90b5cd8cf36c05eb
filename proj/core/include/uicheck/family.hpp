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

#ifndef UICHECK_FAMILY_HPP
#define UICHECK_FAMILY_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "uicheck/eval_result.hpp"
#include "uicheck/expectation.hpp"
#include "uicheck/random_variable.hpp"

namespace uic {

/// A nonempty family of random variables on one atom space together with
/// the expectation (single measure or measure set) it is studied under.
///
/// Infinite sequences are represented by a finite prefix. An optional
/// remainder envelope bounds sup_{n > N} of a sup-criterion's functional
/// over the members not listed.
class Family {
 public:
  using RemainderEnvelope = std::function<double(Criterion, double level)>;

  Family(std::vector<RandomVariable> members, std::shared_ptr<const ExpectationOperator> context);
  /// Classical family under a single measure.
  Family(std::vector<RandomVariable> members, Measure p);

  const std::vector<RandomVariable>& members() const { return members_; }
  const ExpectationOperator& context() const { return *context_; }
  std::shared_ptr<const ExpectationOperator> context_ptr() const { return context_; }

  void set_remainder_envelope(RemainderEnvelope env) { remainder_ = std::move(env); }
  const RemainderEnvelope& remainder_envelope() const { return remainder_; }

 private:
  std::vector<RandomVariable> members_;
  std::shared_ptr<const ExpectationOperator> context_;
  RemainderEnvelope remainder_;
};

enum class Direction { Sup, Inf };

struct ProfilePoint {
  double level;
  EvalResult result;
};

struct Profile {
  Criterion criterion;
  Direction direction;
  std::vector<ProfilePoint> points;

  /// Sup-profiles nonincreasing, inf-profiles nondecreasing, within tol.
  bool is_monotone(double tol = 1e-9) const;
};

/// sup_X E[|X| : |X| >= a] at each level.
Profile ui_profile(const Family& f, std::span<const double> levels, const Horizons& h = {});
/// sup_X E[(|X| - a)^+] at each level.
Profile wui_profile(const Family& f, std::span<const double> levels, const Horizons& h = {});
/// sup_X sum_{n=m}^{series} E[1{|X| > n}] at each start index m >= 1.
/// Under a single measure this is the W*-UI profile; under a measure set the
/// terms are upper probabilities and the same quantity is the S-UI profile.
Profile wstar_ui_profile(const Family& f, std::span<const std::uint64_t> start_indices, const Horizons& h = {});

/// inf_X E[|X| : |X| <= a].
Profile uni_profile(const Family& f, std::span<const double> levels, const Horizons& h = {});
/// inf_X E[|X| ^ a].
Profile wuni_profile(const Family& f, std::span<const double> levels, const Horizons& h = {});
/// inf_X sum_{n=0}^{m} E[1{|X| > n}]. The sum starts at n = 0.
Profile wstar_uni_profile(const Family& f, std::span<const std::uint64_t> m_values, const Horizons& h = {});
/// (UNI, W-UNI, W*-UNI). Levels must be integers for the W*-UNI profile.
std::tuple<Profile, Profile, Profile> nonintegrability_profiles(const Family& f, std::span<const double> levels,
                                                                const Horizons& h = {});

struct SandwichResult {
  EvalResult lo;   // E[(|X| - m)^+]
  EvalResult mid;  // sum_{n>=m} E[1{|X| > n}], truncated at the series horizon
  EvalResult hi;   // E[(|X| - (m-1))^+]
  /// The upper inequality is only a theorem for linear expectations.
  bool upper_checked;
};

/// Evaluates both sides of the tail-sum sandwich and checks
/// lo <= mid (always) and mid <= hi (linear expectations) within tol.
/// Throws SandwichViolation.
SandwichResult sandwich_bounds(const RandomVariable& x, const ExpectationOperator& e, std::uint64_t m,
                               const Horizons& h = {}, double tol = 1e-9);
SandwichResult sandwich_bounds(const RandomVariable& x, const Measure& p, std::uint64_t m, const Horizons& h = {},
                               double tol = 1e-9);

enum class Verdict { CertifiedPass, EmpiricalPass, Fail, Inconclusive };
std::string_view to_string(Verdict v);

struct DiagnoseConfig {
  std::vector<double> levels;  // empty means the default geometric grid 1, 2, 4, ..., 1024
  Horizons horizons;
  double eps_stop = 1e-6;
  double tol = 1e-9;
};

std::vector<double> default_level_grid();

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t evaluated = 0;
  double worst_slack = 0.0;  // most negative (rhs - lhs) seen; >= -tol when passed
  std::string detail;
};

struct CriterionVerdict {
  Criterion criterion;
  Verdict verdict;
  std::string reason;
};

struct DiagnosticsReport {
  std::vector<Profile> profiles;
  std::vector<CriterionVerdict> verdicts;
  std::vector<CheckResult> checks;
  DiagnoseConfig config;

  const Profile& profile(Criterion c) const;
};

/// Computes the UI, W-UI and tail-sum profiles (W*-UI for a single measure,
/// S-UI for a measure set), assigns verdicts and cross-checks domination,
/// the sandwich / Prop 3.3 chain, monotonicity and the boundedness bound.
/// Throws InconsistentProfiles if a cross-check fails beyond tolerance.
DiagnosticsReport diagnose(const Family& f, const DiagnoseConfig& config);

/// Validates a level list: nonempty, finite, nonnegative, strictly increasing.
void check_levels(std::span<const double> levels);

}  // namespace uic

#endif  // UICHECK_FAMILY_HPP
