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

#include "uicheck/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uicheck/errors.hpp"
#include "uicheck/expr.hpp"
#include "uicheck/summation.hpp"

namespace uic {

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::UI: return "ui";
    case Criterion::W_UI: return "wui";
    case Criterion::WSTAR_UI: return "wsui";
    case Criterion::UNI: return "uni";
    case Criterion::W_UNI: return "wuni";
    case Criterion::WSTAR_UNI: return "wsuni";
    case Criterion::S_UI: return "sui";
  }
  return "?";
}

std::optional<Criterion> parse_criterion(std::string_view name) {
  for (Criterion c : {Criterion::UI, Criterion::W_UI, Criterion::WSTAR_UI, Criterion::UNI, Criterion::W_UNI,
                      Criterion::WSTAR_UNI, Criterion::S_UI}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

void check_level(double a) {
  if (!std::isfinite(a) || a < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "level must be a finite nonnegative number, got " + format_double(a));
  }
}

EvalResult integrate(const Integrand& f, const RandomVariable& x, const Measure& p, std::uint64_t horizon) {
  if (!(x.space() == p.space())) {
    throw Error(ErrorKind::SpaceMismatch, "random variable and measure live on different atom spaces");
  }
  CompensatedSum sum;
  if (p.has_finite_support()) {
    const auto atoms = p.atoms();
    const auto weights = p.weights();
    for (std::size_t i = 0; i < atoms.size(); ++i) sum += weights[i] * f(x(atoms[i]));
    return EvalResult::exact(sum.value());
  }

  // Check the bound we will need before doing the work.
  const auto dominance = f.dominance();
  if (dominance != Integrand::Dominance::ByConstant && !x.has_product_tail()) {
    throw Error(ErrorKind::MissingTailBound,
                "E[" + f.describe() + "] under a countable measure needs a product tail bound on the variable");
  }

  CompensatedSum mass;
  for (std::uint64_t i = 0;; ++i) {
    const double w = p.weight(i);
    const double v = x(i);
    if (std::fabs(v) > x.growth(i) * (1.0 + 1e-12)) {
      throw Error(ErrorKind::TailBound, "growth bound violated at atom " + std::to_string(i));
    }
    sum += w * f(v);
    mass += w;
    if (i == horizon) break;
  }
  p.check_horizon(horizon, mass.value());

  double remainder = 0.0;
  switch (dominance) {
    case Integrand::Dominance::ByConstant: remainder = f.dominance_factor() * p.tail_mass(horizon); break;
    case Integrand::Dominance::ByMultipleOfAbs: remainder = f.dominance_factor() * x.product_tail(horizon); break;
    case Integrand::Dominance::ByAbs:
    case Integrand::Dominance::SymmetricByAbs: remainder = x.product_tail(horizon); break;
  }
  const double s = sum.value();
  if (dominance == Integrand::Dominance::SymmetricByAbs) return EvalResult::bracket(s - remainder, s + remainder, horizon);
  return EvalResult::bracket(s, s + remainder, horizon);
}

std::optional<double> ExpectationOperator::support_bound(const RandomVariable& x) const { return x.max_abs(); }

EvalResult LinearExpectation::evaluate(const Integrand& f, const RandomVariable& x, const Horizons& h) const {
  return integrate(f, x, p_, h.atoms);
}

std::optional<double> LinearExpectation::support_bound(const RandomVariable& x) const {
  if (!p_.has_finite_support()) return std::nullopt;
  double m = 0.0;
  const auto atoms = p_.atoms();
  const auto weights = p_.weights();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (weights[i] > 0.0) m = std::max(m, std::fabs(x(atoms[i])));
  }
  return m;
}

EvalResult expectation(const RandomVariable& x, const Measure& p, std::uint64_t horizon) {
  return integrate(Integrand::abs(), x, p, horizon);
}

EvalResult signed_expectation(const RandomVariable& x, const Measure& p, std::uint64_t horizon) {
  return integrate(Integrand::signed_value(), x, p, horizon);
}

EvalResult truncated_above(const RandomVariable& x, const Measure& p, double a, std::uint64_t horizon) {
  check_level(a);
  return integrate(Integrand::truncated(a), x, p, horizon);
}

EvalResult excess(const RandomVariable& x, const Measure& p, double a, std::uint64_t horizon) {
  check_level(a);
  return integrate(Integrand::excess(a), x, p, horizon);
}

EvalResult capped(const RandomVariable& x, const Measure& p, double a, std::uint64_t horizon) {
  check_level(a);
  return integrate(Integrand::capped(a), x, p, horizon);
}

EvalResult tail_prob(const RandomVariable& x, const Measure& p, std::uint64_t n, std::uint64_t horizon) {
  return integrate(Integrand::tail_prob(static_cast<double>(n)), x, p, horizon);
}

EvalResult tail_sum(const RandomVariable& x, const Measure& p, std::uint64_t m, std::uint64_t series_horizon,
                    std::uint64_t atom_horizon) {
  return tail_sum(LinearExpectation(p), x, m, Horizons{atom_horizon, series_horizon});
}

namespace {

// sum_{n=m}^{N} P(|X| > n) under a countable density, as one pass over the
// atoms: atom i contributes the number of n in [m, N] below |x_i|.
double density_tail_sum(const RandomVariable& x, const Measure& p, std::uint64_t m, const Horizons& h) {
  if (!(x.space() == p.space())) {
    throw Error(ErrorKind::SpaceMismatch, "random variable and measure live on different atom spaces");
  }
  CompensatedSum sum, mass;
  const double first = static_cast<double>(m);
  const double last = static_cast<double>(h.series);
  for (std::uint64_t i = 0;; ++i) {
    const double w = p.weight(i);
    const double v = std::fabs(x(i));
    if (v > x.growth(i) * (1.0 + 1e-12)) {
      throw Error(ErrorKind::TailBound, "growth bound violated at atom " + std::to_string(i));
    }
    const double top = std::min(last, std::ceil(v) - 1.0);
    if (top >= first) sum += w * (top - first + 1.0);
    mass += w;
    if (i == h.atoms) break;
  }
  p.check_horizon(h.atoms, mass.value());
  return sum.value();
}

}  // namespace

EvalResult tail_sum(const ExpectationOperator& e, const RandomVariable& x, std::uint64_t m, const Horizons& h,
                    bool sandwich_upgrade) {
  const std::optional<double> bound = e.support_bound(x);
  const bool complete = bound && static_cast<double>(h.series) >= *bound;

  const auto* lin = dynamic_cast<const LinearExpectation*>(&e);
  if (lin != nullptr && !lin->measure().has_finite_support() && !complete) {
    const double partial = m <= h.series ? density_tail_sum(x, lin->measure(), m, h) : 0.0;
    const std::uint64_t horizon = std::max(h.atoms, h.series);
    if (sandwich_upgrade && m >= 1) {
      const double upper = e.evaluate(Integrand::excess(static_cast<double>(m - 1)), x, h).upper();
      if (std::isfinite(upper)) return EvalResult::bracket(partial, std::max(partial, upper), horizon);
    }
    return EvalResult::lower_bound(partial, horizon);
  }

  // Past the largest atom any evaluated measure charges, every term is zero.
  const std::optional<double> cutoff = complete ? bound : e.evaluated_support_bound(x);

  CompensatedSum lo, hi;
  bool all_exact = true;
  bool hi_finite = true;
  std::optional<std::uint64_t> horizon;
  for (std::uint64_t n = m; n <= h.series; ++n) {
    const double level = static_cast<double>(n);
    if (cutoff && level >= *cutoff) break;
    const EvalResult r = e.evaluate(Integrand::tail_prob(level), x, h);
    lo += r.lower();
    if (std::isfinite(r.upper())) {
      hi += r.upper();
    } else {
      hi_finite = false;
    }
    all_exact = all_exact && r.is_exact();
    if (r.horizon_used) horizon = std::max(horizon.value_or(0), *r.horizon_used);
    if (n == h.series) break;
  }

  if (complete) {
    if (!hi_finite) return EvalResult::lower_bound(lo.value(), horizon);
    return from_interval(lo.value(), std::max(lo.value(), hi.value()), all_exact, horizon);
  }
  horizon = std::max(horizon.value_or(0), h.series);
  if (sandwich_upgrade && e.is_linear() && m >= 1) {
    const double upper = e.evaluate(Integrand::excess(static_cast<double>(m - 1)), x, h).upper();
    if (std::isfinite(upper)) return EvalResult::bracket(lo.value(), std::max(lo.value(), upper), horizon);
  }
  return EvalResult::lower_bound(lo.value(), horizon);
}

}  // namespace uic
