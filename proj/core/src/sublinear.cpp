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

#include "uicheck/sublinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "uicheck/errors.hpp"
#include "uicheck/expr.hpp"

namespace uic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Running supremum without storing every part.
class SupAccumulator {
 public:
  void add(const EvalResult& r) {
    lo_ = std::max(lo_, r.lower());
    hi_ = std::max(hi_, r.upper());
    all_exact_ = all_exact_ && r.is_exact();
    if (r.horizon_used) horizon_ = std::max(horizon_.value_or(0), *r.horizon_used);
    any_ = true;
  }
  EvalResult result() const {
    if (!any_) throw Error(ErrorKind::InvalidArgument, "supremum over an empty measure set");
    return from_interval(lo_, hi_, all_exact_, horizon_);
  }

 private:
  double lo_ = -kInf, hi_ = -kInf;
  bool all_exact_ = true;
  bool any_ = false;
  std::optional<std::uint64_t> horizon_;
};

}  // namespace

MeasureSet MeasureSet::explicit_set(std::vector<Measure> measures) {
  if (measures.empty()) throw Error(ErrorKind::InvalidArgument, "explicit measure set is empty");
  for (const auto& m : measures) {
    if (!(m.space() == measures.front().space())) {
      throw Error(ErrorKind::SpaceMismatch, "measures in a set must share one atom space");
    }
  }
  MeasureSet s;
  s.variant_ = Variant::Explicit;
  s.space_ = measures.front().space();
  s.measures_ = std::move(measures);
  return s;
}

MeasureSet MeasureSet::indexed(AtomSpace space, std::uint64_t first_index, IndexedMeasure measure,
                               SupStrategy strategy) {
  if (!measure) throw Error(ErrorKind::InvalidArgument, "indexed measure set needs a measure constructor");
  if (strategy.k_max < first_index) {
    throw Error(ErrorKind::InvalidArgument, "indexed measure set: k_max below the first index");
  }
  MeasureSet s;
  s.variant_ = Variant::Indexed;
  s.space_ = space;
  s.first_index_ = first_index;
  s.indexed_ = std::move(measure);
  s.strategy_ = strategy;
  s.measures_.reserve(static_cast<std::size_t>(strategy.k_max - first_index + 1));
  for (std::uint64_t k = first_index; k <= strategy.k_max; ++k) s.measures_.push_back(s.measure_at(k));
  return s;
}

MeasureSet MeasureSet::closed_form(std::shared_ptr<const ClosedFormPlugin> plugin) {
  if (!plugin) throw Error(ErrorKind::InvalidArgument, "closed-form measure set needs a plugin");
  MeasureSet s;
  s.variant_ = Variant::ClosedForm;
  s.space_ = plugin->space();
  s.first_index_ = plugin->first_index();
  s.strategy_ = {plugin->max_index(), true};
  s.plugin_ = std::move(plugin);
  return s;
}

Measure MeasureSet::measure_at(std::uint64_t index) const {
  switch (variant_) {
    case Variant::Explicit:
      if (index >= measures_.size()) throw Error(ErrorKind::InvalidArgument, "measure index out of range");
      return measures_[index];
    case Variant::Indexed: {
      if (index < first_index_) throw Error(ErrorKind::InvalidArgument, "measure index below the first index");
      if (index - first_index_ < measures_.size()) return measures_[index - first_index_];
      Measure m = indexed_(index);
      if (!(m.space() == space_)) throw Error(ErrorKind::SpaceMismatch, "indexed measure on a different space");
      return m;
    }
    case Variant::ClosedForm:
      if (index < plugin_->first_index() || index > plugin_->max_index()) {
        throw Error(ErrorKind::InvalidArgument, "plugin measure index out of range");
      }
      return plugin_->measure_at(index);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown measure set variant");
}

EvalResult SublinearExpectation::evaluate(const Integrand& f, const RandomVariable& x, const Horizons& h) const {
  if (!(x.space() == set_.space())) {
    throw Error(ErrorKind::SpaceMismatch, "random variable and measure set live on different atom spaces");
  }
  switch (set_.variant()) {
    case MeasureSet::Variant::Explicit: {
      SupAccumulator acc;
      for (const auto& p : set_.measures()) acc.add(integrate(f, x, p, h.atoms));
      return acc.result();
    }
    case MeasureSet::Variant::Indexed: {
      SupAccumulator acc;
      const auto& s = set_.strategy();
      for (const auto& p : set_.measures()) acc.add(integrate(f, x, p, h.atoms));
      EvalResult r = acc.result();
      if (!s.monotone_tail) {
        r = EvalResult::lower_bound(r.lower(), std::max(r.horizon_used.value_or(0), s.k_max));
      }
      return r;
    }
    case MeasureSet::Variant::ClosedForm: return set_.plugin()->sup(f, x);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown measure set variant");
}

bool SublinearExpectation::is_linear() const {
  return set_.variant() == MeasureSet::Variant::Explicit && set_.measures().size() == 1;
}

std::string SublinearExpectation::describe() const {
  switch (set_.variant()) {
    case MeasureSet::Variant::Explicit:
      return "sup over " + std::to_string(set_.measures().size()) + " explicit measure(s)";
    case MeasureSet::Variant::Indexed:
      return "sup over indexed measures k=" + std::to_string(set_.first_index()) + ".." +
             std::to_string(set_.strategy().k_max) + (set_.strategy().monotone_tail ? " (monotone tail)" : "");
    case MeasureSet::Variant::ClosedForm: return "closed-form plugin " + set_.plugin()->name();
  }
  return "?";
}

std::optional<double> SublinearExpectation::support_bound(const RandomVariable& x) const {
  if (set_.variant() != MeasureSet::Variant::Explicit) return x.max_abs();
  double m = 0.0;
  for (const auto& p : set_.measures()) {
    auto b = LinearExpectation(p).support_bound(x);
    if (!b) return x.max_abs();
    m = std::max(m, *b);
  }
  return m;
}

std::optional<double> SublinearExpectation::evaluated_support_bound(const RandomVariable& x) const {
  if (set_.variant() != MeasureSet::Variant::Indexed) return support_bound(x);
  double m = 0.0;
  for (const auto& p : set_.measures()) {
    auto b = LinearExpectation(p).support_bound(x);
    if (!b) return support_bound(x);
    m = std::max(m, *b);
  }
  return m;
}

std::optional<AnalyticEnvelope> SublinearExpectation::envelope(Criterion c, const RandomVariable& x) const {
  if (set_.variant() != MeasureSet::Variant::ClosedForm) return std::nullopt;
  return set_.plugin()->envelope(c, x);
}

EvalResult SublinearExpectation::brute_force(const Integrand& f, const RandomVariable& x, std::uint64_t k_max,
                                             const Horizons& h) const {
  if (set_.variant() == MeasureSet::Variant::Explicit) return evaluate(f, x, h);
  SupAccumulator acc;
  for (std::uint64_t k = set_.first_index(); k <= k_max; ++k) acc.add(integrate(f, x, set_.measure_at(k), h.atoms));
  return acc.result();
}

EvalResult sup_expectation(const SublinearExpectation& e, const Integrand& f, const RandomVariable& x,
                           const Horizons& h) {
  return e.evaluate(f, x, h);
}

std::vector<Measure> materialize(const ExpectationOperator& e) {
  if (const auto* lin = dynamic_cast<const LinearExpectation*>(&e)) return {lin->measure()};
  if (const auto* sub = dynamic_cast<const SublinearExpectation*>(&e)) {
    const MeasureSet& s = sub->measure_set();
    if (s.variant() == MeasureSet::Variant::Explicit) return s.measures();
    std::vector<Measure> out;
    for (std::uint64_t k = s.first_index(); k <= s.strategy().k_max; ++k) out.push_back(s.measure_at(k));
    return out;
  }
  throw Error(ErrorKind::InvalidArgument, "cannot materialize the measures of " + e.describe());
}

AxiomReport check_axioms(const ExpectationOperator& e, std::size_t trials, std::uint64_t seed, double tol,
                         bool throw_on_violation) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "axiom check needs at least one trial");
  if (!e.space().is_finite()) {
    throw Error(ErrorKind::InvalidArgument, "axiom check draws random variables on a finite space");
  }
  const std::size_t n = e.space().size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  std::uniform_real_distribution<double> gap(0.0, 5.0);
  std::uniform_real_distribution<double> scale(0.0, 10.0);
  const Horizons h;

  AxiomReport report;
  report.trials = trials;
  report.tol = tol;
  auto draw = [&](auto& dist) {
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
  };
  auto eval = [&](std::vector<double> v) {
    return e.evaluate(Integrand::signed_value(), RandomVariable::finite(std::move(v)), h).value;
  };
  auto note = [&](double violation, const std::string& what) {
    if (violation > tol) {
      if (report.violations == 0) report.witness = what;
      ++report.violations;
    }
  };

  for (std::size_t t = 0; t < trials; ++t) {
    const std::vector<double> x = draw(value);
    const std::vector<double> y = draw(value);
    const std::vector<double> z = draw(gap);
    const double c = (t % 50 == 0) ? -3.0 : value(rng);
    const double lambda = (t % 7 == 0) ? 0.0 : scale(rng);

    std::vector<double> below(n), sum(n), scaled(n);
    for (std::size_t i = 0; i < n; ++i) {
      below[i] = x[i] - z[i];
      sum[i] = x[i] + y[i];
      scaled[i] = lambda * x[i];
    }
    const double ex = eval(x);
    const double ey = eval(y);

    const double mono = eval(below) - ex;
    report.monotonicity = std::max(report.monotonicity, mono);
    note(mono, "monotonicity, trial " + std::to_string(t) + ": E[Y]-E[X]=" + format_double(mono));

    const double cst = std::fabs(eval(std::vector<double>(n, c)) - c);
    report.constant = std::max(report.constant, cst);
    note(cst, "constant preserving, trial " + std::to_string(t) + ": c=" + format_double(c));

    const double sub = eval(sum) - ex - ey;
    report.subadditivity = std::max(report.subadditivity, sub);
    note(sub, "sub-additivity, trial " + std::to_string(t) + ": excess " + format_double(sub));

    const double hom = std::fabs(eval(scaled) - lambda * ex) / (1.0 + lambda);
    report.homogeneity = std::max(report.homogeneity, hom);
    note(hom, "positive homogeneity, trial " + std::to_string(t) + ": lambda=" + format_double(lambda));
  }
  if (throw_on_violation && !report.ok()) {
    throw Error(ErrorKind::AxiomViolation,
                std::to_string(report.violations) + " axiom violation(s); first: " + report.witness);
  }
  return report;
}

Profile sle_ui_profile(const Family& k, std::span<const double> levels, const Horizons& h) {
  return ui_profile(k, levels, h);
}

Profile sle_wui_profile(const Family& k, std::span<const double> levels, const Horizons& h) {
  return wui_profile(k, levels, h);
}

Profile sle_sui_profile(const Family& k, std::span<const std::uint64_t> start_indices, const Horizons& h) {
  Profile p = wstar_ui_profile(k, start_indices, h);
  p.criterion = Criterion::S_UI;
  return p;
}

}  // namespace uic
