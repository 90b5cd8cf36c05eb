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

#ifndef UICHECK_EXPECTATION_HPP
#define UICHECK_EXPECTATION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "uicheck/eval_result.hpp"
#include "uicheck/integrand.hpp"
#include "uicheck/measure.hpp"
#include "uicheck/random_variable.hpp"

namespace uic {

/// Truncation horizons for countable sums.
struct Horizons {
  std::uint64_t atoms = std::uint64_t{1} << 16;   // last atom index summed
  std::uint64_t series = std::uint64_t{1} << 16;  // last n in tail sums
};

enum class Criterion { UI, W_UI, WSTAR_UI, UNI, W_UNI, WSTAR_UNI, S_UI };

std::string_view to_string(Criterion c);
std::optional<Criterion> parse_criterion(std::string_view name);

/// A closed-form upper bound for a sup-profile, valid at every level, with
/// a known limit as the level grows.
struct AnalyticEnvelope {
  enum class Limit { Vanishes, Diverges };
  std::function<double(double)> bound;
  Limit limit = Limit::Vanishes;
  std::string formula;
};

/// An expectation functional E[f(X)]: a single measure or a supremum over a
/// measure set.
class ExpectationOperator {
 public:
  virtual ~ExpectationOperator() = default;

  virtual EvalResult evaluate(const Integrand& f, const RandomVariable& x, const Horizons& h) const = 0;
  virtual const AtomSpace& space() const = 0;
  /// True when the functional is an ordinary (linear) expectation.
  virtual bool is_linear() const = 0;
  virtual std::string describe() const = 0;

  /// max |X| over every atom charged by some measure, when that is finite
  /// and known.
  virtual std::optional<double> support_bound(const RandomVariable& x) const;

  /// Like support_bound, restricted to the measures an evaluation actually
  /// visits (for sets that are only partly enumerated).
  virtual std::optional<double> evaluated_support_bound(const RandomVariable& x) const { return support_bound(x); }

  /// Analytic envelope for a profile of {x}, if the model has one.
  virtual std::optional<AnalyticEnvelope> envelope(Criterion, const RandomVariable&) const {
    return std::nullopt;
  }
};

/// Ordinary expectation under one measure.
class LinearExpectation final : public ExpectationOperator {
 public:
  explicit LinearExpectation(Measure p) : p_(std::move(p)) {}

  EvalResult evaluate(const Integrand& f, const RandomVariable& x, const Horizons& h) const override;
  const AtomSpace& space() const override { return p_.space(); }
  bool is_linear() const override { return true; }
  std::string describe() const override { return "linear expectation"; }
  std::optional<double> support_bound(const RandomVariable& x) const override;

  const Measure& measure() const { return p_; }

 private:
  Measure p_;
};

/// E_P[f(X)] summed in ascending atom order with compensation. Exact for
/// finitely supported P; a bracket [partial, partial + tail] otherwise.
EvalResult integrate(const Integrand& f, const RandomVariable& x, const Measure& p, std::uint64_t horizon);

/// Rejects negative, infinite or NaN levels.
void check_level(double a);

// Elementary functionals under a single measure.

/// E|X|.
EvalResult expectation(const RandomVariable& x, const Measure& p, std::uint64_t horizon = Horizons{}.atoms);
/// E[X] (signed).
EvalResult signed_expectation(const RandomVariable& x, const Measure& p,
                              std::uint64_t horizon = Horizons{}.atoms);
/// E[|X| : |X| >= a].
EvalResult truncated_above(const RandomVariable& x, const Measure& p, double a,
                           std::uint64_t horizon = Horizons{}.atoms);
/// E[(|X| - a)^+], equal to E[|X| - a : |X| >= a].
EvalResult excess(const RandomVariable& x, const Measure& p, double a, std::uint64_t horizon = Horizons{}.atoms);
/// E[|X| ^ a].
EvalResult capped(const RandomVariable& x, const Measure& p, double a, std::uint64_t horizon = Horizons{}.atoms);
/// P(|X| > n).
EvalResult tail_prob(const RandomVariable& x, const Measure& p, std::uint64_t n,
                     std::uint64_t horizon = Horizons{}.atoms);
/// sum_{n=m}^{series_horizon} P(|X| > n).
EvalResult tail_sum(const RandomVariable& x, const Measure& p, std::uint64_t m,
                    std::uint64_t series_horizon = Horizons{}.series,
                    std::uint64_t atom_horizon = Horizons{}.atoms);

/// sum_{n=m}^{h.series} E[1{|X| > n}] under any expectation operator.
///
/// Exact when X is bounded on its support and the series horizon reaches
/// that bound. Otherwise a lower bound; for linear operators and m >= 1 the
/// upper end is supplied by E[(|X| - (m-1))^+] (the tail sum never exceeds
/// it), giving a bracket, unless `sandwich_upgrade` is false.
EvalResult tail_sum(const ExpectationOperator& e, const RandomVariable& x, std::uint64_t m, const Horizons& h,
                    bool sandwich_upgrade = true);

}  // namespace uic

#endif  // UICHECK_EXPECTATION_HPP
