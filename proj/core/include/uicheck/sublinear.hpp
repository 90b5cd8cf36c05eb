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

#ifndef UICHECK_SUBLINEAR_HPP
#define UICHECK_SUBLINEAR_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uicheck/expectation.hpp"
#include "uicheck/family.hpp"

namespace uic {

/// Closed-form sublinear model. Besides exact suprema for a declared class
/// of integrands it must expose the per-index measures it is the supremum
/// of, so every formula can be checked by brute force.
class ClosedFormPlugin {
 public:
  virtual ~ClosedFormPlugin() = default;

  virtual std::string name() const = 0;
  virtual const AtomSpace& space() const = 0;
  /// Throws UnsupportedIntegrand outside the declared class.
  virtual EvalResult sup(const Integrand& f, const RandomVariable& x) const = 0;
  virtual std::optional<AnalyticEnvelope> envelope(Criterion c, const RandomVariable& x) const = 0;

  virtual std::uint64_t first_index() const = 0;
  /// Largest index that may be materialized.
  virtual std::uint64_t max_index() const = 0;
  virtual Measure measure_at(std::uint64_t index) const = 0;
};

/// The set of measures a sublinear expectation takes its supremum over.
///
/// Convex credal sets are given by their extreme points: the supremum of a
/// linear functional over the hull is attained at a vertex.
class MeasureSet {
 public:
  enum class Variant { Explicit, Indexed, ClosedForm };

  struct SupStrategy {
    std::uint64_t k_max = 0;
    /// Asserts that past k_max the per-index value is nonincreasing, so the
    /// maximum over indices <= k_max is the supremum.
    bool monotone_tail = false;
  };
  using IndexedMeasure = std::function<Measure(std::uint64_t index)>;

  static MeasureSet explicit_set(std::vector<Measure> measures);
  static MeasureSet indexed(AtomSpace space, std::uint64_t first_index, IndexedMeasure measure, SupStrategy strategy);
  static MeasureSet closed_form(std::shared_ptr<const ClosedFormPlugin> plugin);

  Variant variant() const { return variant_; }
  const AtomSpace& space() const { return space_; }
  /// The explicit list, or the cached measures first..k_max of an indexed set.
  const std::vector<Measure>& measures() const { return measures_; }
  const ClosedFormPlugin* plugin() const { return plugin_.get(); }
  std::uint64_t first_index() const { return first_index_; }
  const SupStrategy& strategy() const { return strategy_; }
  Measure measure_at(std::uint64_t index) const;

 private:
  MeasureSet() = default;
  Variant variant_ = Variant::Explicit;
  AtomSpace space_ = AtomSpace::countable();
  std::vector<Measure> measures_;
  std::uint64_t first_index_ = 0;
  IndexedMeasure indexed_;
  SupStrategy strategy_;
  std::shared_ptr<const ClosedFormPlugin> plugin_;
};

/// E[f(X)] = sup over a MeasureSet of ordinary expectations.
class SublinearExpectation final : public ExpectationOperator {
 public:
  explicit SublinearExpectation(MeasureSet measures) : set_(std::move(measures)) {}

  EvalResult evaluate(const Integrand& f, const RandomVariable& x, const Horizons& h) const override;
  const AtomSpace& space() const override { return set_.space(); }
  /// A singleton explicit set is an ordinary expectation.
  bool is_linear() const override;
  std::string describe() const override;
  std::optional<double> support_bound(const RandomVariable& x) const override;
  std::optional<double> evaluated_support_bound(const RandomVariable& x) const override;
  std::optional<AnalyticEnvelope> envelope(Criterion c, const RandomVariable& x) const override;

  const MeasureSet& measure_set() const { return set_; }

  /// Maximum of per-index expectations for indices first..k_max, each
  /// computed from a materialized measure. Indexed and closed-form sets.
  EvalResult brute_force(const Integrand& f, const RandomVariable& x, std::uint64_t k_max,
                         const Horizons& h = {}) const;

 private:
  MeasureSet set_;
};

/// sup over the measure set of E[f(X)].
EvalResult sup_expectation(const SublinearExpectation& e, const Integrand& f, const RandomVariable& x,
                           const Horizons& h = {});

/// Materializes the measures behind a finite-space expectation operator:
/// the single measure, the explicit list, or the indexed measures up to
/// k_max (closed-form: up to max_index()).
std::vector<Measure> materialize(const ExpectationOperator& e);

struct AxiomReport {
  std::size_t trials = 0;
  double tol = 0.0;
  double monotonicity = 0.0;  // max of E[Y] - E[X] over Y <= X
  double constant = 0.0;      // max |E[c] - c|
  double subadditivity = 0.0; // max of E[X+Y] - E[X] - E[Y]
  double homogeneity = 0.0;   // max |E[lX] - l E[X]| / (1 + l)
  std::size_t violations = 0;
  std::string witness;

  bool ok() const { return violations == 0; }
};

/// Randomized check of monotonicity, constant preservation, sub-additivity
/// and positive homogeneity on a finite space. Throws AxiomViolation (with
/// the first witness) when any axiom fails beyond tol, unless
/// `throw_on_violation` is false.
AxiomReport check_axioms(const ExpectationOperator& e, std::size_t trials, std::uint64_t seed, double tol = 1e-12,
                         bool throw_on_violation = true);

/// sup_X E[|X| 1{|X| >= c}] under the family's measure set.
Profile sle_ui_profile(const Family& k, std::span<const double> levels, const Horizons& h = {});
/// sup_X E[(|X| - a)^+].
Profile sle_wui_profile(const Family& k, std::span<const double> levels, const Horizons& h = {});
/// sup_X sum_{n=m}^{series} E[1{|X| > n}].
Profile sle_sui_profile(const Family& k, std::span<const std::uint64_t> start_indices, const Horizons& h = {});

struct Thm31Condition {
  double eps = 0.0;
  /// Largest dyadic delta such that every event A with E[1_A] <= delta has
  /// sup_X E[1_A |X|] < eps; empty when none on the grid works.
  std::optional<double> delta;
  /// Smallest E[1_A] among events with sup_X E[1_A |X|] >= eps.
  double worst_event_prob = 0.0;
  std::uint64_t witness_event = 0;  // bitmask of atoms, exact search only
};

struct Thm31Report {
  double sup_mean = 0.0;  // condition (i): sup_X E|X|
  std::vector<Thm31Condition> conditions;
  bool exhaustive = true;
  std::size_t events_examined = 0;
  std::string note;  // set when the search was downgraded to a heuristic

  bool condition_ii_holds() const;
};

inline constexpr std::size_t kMaxExactAtoms = 20;

/// Checks both conditions of the two-condition UI characterization on a
/// finite space. Exhaustive over all events when the space has at most 20
/// atoms; otherwise sorted-prefix events plus `subset_budget` random events,
/// flagged heuristic. Delta is searched on the grid 2^0, 2^-1, ...,
/// 2^-grid_depth.
Thm31Report check_thm31(const Family& k, std::span<const double> eps, std::size_t subset_budget = 4096,
                        std::uint64_t seed = 20170601, int grid_depth = 16);

struct Counterexample {
  std::shared_ptr<const SublinearExpectation> expectation;
  RandomVariable x;
};

inline constexpr std::string_view kRemarkPluginName = "remark-counterexample";

/// Atoms 0, 1, 2, ...; P_n(n) = 1/(n ln n), P_n(0) = 1 - 1/(n ln n) for
/// n >= 2; E = sup_n E_n; X(n) = n. Closed forms:
///   E[|X| 1{|X| >= m}] = 1/ln m        (m >= 2)
///   E[1{|X| > n}]      = 1/((n+1) ln(n+1))
/// Per-index measures are materializable up to n_max.
Counterexample build_counterexample(std::uint64_t n_max = 1000000);

}  // namespace uic

#endif  // UICHECK_SUBLINEAR_HPP
