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

#include "uicheck/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "uicheck/errors.hpp"
#include "uicheck/expr.hpp"
#include "uicheck/summation.hpp"

namespace uic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename MakeIntegrand>
Profile sup_profile(const Family& f, std::span<const double> levels, Criterion c, MakeIntegrand make,
                    const Horizons& h) {
  check_levels(levels);
  Profile p{c, Direction::Sup, {}};
  p.points.reserve(levels.size());
  std::vector<EvalResult> parts(f.members().size());
  for (double a : levels) {
    const Integrand integrand = make(a);
    for (std::size_t i = 0; i < f.members().size(); ++i) {
      parts[i] = f.context().evaluate(integrand, f.members()[i], h);
    }
    EvalResult r = sup_of(parts);
    if (f.remainder_envelope()) {
      const double env = f.remainder_envelope()(c, a);
      r = from_interval(r.lower(), std::max(r.upper(), env), false, r.horizon_used);
    }
    p.points.push_back({a, r});
  }
  return p;
}

template <typename MakeIntegrand>
Profile inf_profile(const Family& f, std::span<const double> levels, Criterion c, MakeIntegrand make,
                    const Horizons& h) {
  check_levels(levels);
  Profile p{c, Direction::Inf, {}};
  p.points.reserve(levels.size());
  std::vector<EvalResult> parts(f.members().size());
  for (double a : levels) {
    const Integrand integrand = make(a);
    for (std::size_t i = 0; i < f.members().size(); ++i) {
      parts[i] = f.context().evaluate(integrand, f.members()[i], h);
    }
    p.points.push_back({a, inf_of(parts)});
  }
  return p;
}

void check_indices(std::span<const std::uint64_t> m, std::uint64_t min_value) {
  if (m.empty()) throw Error(ErrorKind::InvalidArgument, "index grid is empty");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < min_value) {
      throw Error(ErrorKind::InvalidArgument, "start index must be >= " + std::to_string(min_value));
    }
    if (i > 0 && m[i] <= m[i - 1]) throw Error(ErrorKind::InvalidArgument, "index grid must be strictly increasing");
  }
}

EvalResult sup_members(const Family& f, const Integrand& integrand, const Horizons& h) {
  std::vector<EvalResult> parts;
  parts.reserve(f.members().size());
  for (const auto& x : f.members()) parts.push_back(f.context().evaluate(integrand, x, h));
  return sup_of(parts);
}

// Records lhs <= rhs + tol on a running check.
void record(CheckResult& check, double lhs, double rhs, double tol, const std::string& where) {
  ++check.evaluated;
  const double slack = rhs - lhs;
  if (std::isnan(slack)) return;
  if (slack < check.worst_slack) check.worst_slack = slack;
  if (slack < -tol && check.passed) {
    check.passed = false;
    check.detail = where + ": " + format_double(lhs) + " > " + format_double(rhs);
  }
}

}  // namespace

Family::Family(std::vector<RandomVariable> members, std::shared_ptr<const ExpectationOperator> context)
    : members_(std::move(members)), context_(std::move(context)) {
  if (members_.empty()) throw Error(ErrorKind::InvalidArgument, "family must have at least one member");
  if (!context_) throw Error(ErrorKind::InvalidArgument, "family needs a measure context");
  for (const auto& x : members_) {
    if (!(x.space() == context_->space())) {
      throw Error(ErrorKind::SpaceMismatch, "family member lives on a different atom space than its measure context");
    }
  }
}

Family::Family(std::vector<RandomVariable> members, Measure p)
    : Family(std::move(members), std::make_shared<const LinearExpectation>(std::move(p))) {}

bool Profile::is_monotone(double tol) const {
  for (std::size_t i = 1; i < points.size(); ++i) {
    const auto& prev = points[i - 1].result;
    const auto& cur = points[i].result;
    if (direction == Direction::Sup && cur.lower() > prev.upper() + tol) return false;
    if (direction == Direction::Inf && cur.upper() < prev.lower() - tol) return false;
  }
  return true;
}

void check_levels(std::span<const double> levels) {
  if (levels.empty()) throw Error(ErrorKind::InvalidArgument, "level grid is empty");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    check_level(levels[i]);
    if (i > 0 && levels[i] <= levels[i - 1]) {
      throw Error(ErrorKind::InvalidArgument, "level grid must be strictly increasing");
    }
  }
}

Profile ui_profile(const Family& f, std::span<const double> levels, const Horizons& h) {
  return sup_profile(f, levels, Criterion::UI, [](double a) { return Integrand::truncated(a); }, h);
}

Profile wui_profile(const Family& f, std::span<const double> levels, const Horizons& h) {
  return sup_profile(f, levels, Criterion::W_UI, [](double a) { return Integrand::excess(a); }, h);
}

Profile wstar_ui_profile(const Family& f, std::span<const std::uint64_t> start_indices, const Horizons& h) {
  check_indices(start_indices, 1);
  const Criterion c = f.context().is_linear() ? Criterion::WSTAR_UI : Criterion::S_UI;
  Profile p{c, Direction::Sup, {}};
  std::vector<EvalResult> parts(f.members().size());
  for (std::uint64_t m : start_indices) {
    for (std::size_t i = 0; i < f.members().size(); ++i) parts[i] = tail_sum(f.context(), f.members()[i], m, h);
    EvalResult r = sup_of(parts);
    if (f.remainder_envelope()) {
      const double env = f.remainder_envelope()(c, static_cast<double>(m));
      r = from_interval(r.lower(), std::max(r.upper(), env), false, r.horizon_used);
    }
    p.points.push_back({static_cast<double>(m), r});
  }
  return p;
}

Profile uni_profile(const Family& f, std::span<const double> levels, const Horizons& h) {
  return inf_profile(f, levels, Criterion::UNI, [](double a) { return Integrand::lower(a); }, h);
}

Profile wuni_profile(const Family& f, std::span<const double> levels, const Horizons& h) {
  return inf_profile(f, levels, Criterion::W_UNI, [](double a) { return Integrand::capped(a); }, h);
}

Profile wstar_uni_profile(const Family& f, std::span<const std::uint64_t> m_values, const Horizons& h) {
  check_indices(m_values, 0);
  Profile p{Criterion::WSTAR_UNI, Direction::Inf, {}};
  std::vector<EvalResult> parts(f.members().size());
  for (std::uint64_t m : m_values) {
    for (std::size_t i = 0; i < f.members().size(); ++i) {
      CompensatedSum lo, hi;
      bool all_exact = true;
      bool hi_finite = true;
      std::optional<std::uint64_t> horizon;
      for (std::uint64_t n = 0; n <= m; ++n) {
        const EvalResult r = f.context().evaluate(Integrand::tail_prob(static_cast<double>(n)), f.members()[i], h);
        lo += r.lower();
        if (std::isfinite(r.upper())) {
          hi += r.upper();
        } else {
          hi_finite = false;
        }
        all_exact = all_exact && r.is_exact();
        if (r.horizon_used) horizon = std::max(horizon.value_or(0), *r.horizon_used);
      }
      parts[i] = from_interval(lo.value(), hi_finite ? std::max(lo.value(), hi.value()) : kInf, all_exact, horizon);
    }
    p.points.push_back({static_cast<double>(m), inf_of(parts)});
  }
  return p;
}

std::tuple<Profile, Profile, Profile> nonintegrability_profiles(const Family& f, std::span<const double> levels,
                                                                const Horizons& h) {
  check_levels(levels);
  std::vector<std::uint64_t> m_values;
  m_values.reserve(levels.size());
  for (double a : levels) {
    if (std::floor(a) != a) {
      throw Error(ErrorKind::InvalidArgument, "W*-UNI partial sums need integer levels, got " + format_double(a));
    }
    m_values.push_back(static_cast<std::uint64_t>(a));
  }
  return {uni_profile(f, levels, h), wuni_profile(f, levels, h), wstar_uni_profile(f, m_values, h)};
}

SandwichResult sandwich_bounds(const RandomVariable& x, const ExpectationOperator& e, std::uint64_t m,
                               const Horizons& h, double tol) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "sandwich needs m >= 1");
  SandwichResult r{
      e.evaluate(Integrand::excess(static_cast<double>(m)), x, h),
      tail_sum(e, x, m, h, /*sandwich_upgrade=*/false),
      e.evaluate(Integrand::excess(static_cast<double>(m - 1)), x, h),
      e.is_linear(),
  };
  const bool lower_ok = r.lo.lower() <= r.mid.upper() + tol;
  const bool upper_ok = !r.upper_checked || r.mid.lower() <= r.hi.upper() + tol;
  if (!lower_ok || !upper_ok) {
    std::ostringstream msg;
    msg << "sandwich violated at m=" << m << ": excess(m)=" << format_double(r.lo.value)
        << " tail_sum(m)=" << format_double(r.mid.value) << " excess(m-1)=" << format_double(r.hi.value);
    throw SandwichViolation(r.lo.value, r.mid.value, r.hi.value, msg.str());
  }
  return r;
}

SandwichResult sandwich_bounds(const RandomVariable& x, const Measure& p, std::uint64_t m, const Horizons& h,
                               double tol) {
  return sandwich_bounds(x, LinearExpectation(p), m, h, tol);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedPass: return "certified_pass";
    case Verdict::EmpiricalPass: return "empirical_pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<double> default_level_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k) grid.push_back(std::ldexp(1.0, k));
  return grid;
}

const Profile& DiagnosticsReport::profile(Criterion c) const {
  for (const auto& p : profiles) {
    if (p.criterion == c) return p;
  }
  throw Error(ErrorKind::InvalidArgument, "report has no " + std::string(to_string(c)) + " profile");
}

DiagnosticsReport diagnose(const Family& f, const DiagnoseConfig& config) {
  DiagnosticsReport report;
  report.config = config;
  if (report.config.levels.empty()) report.config.levels = default_level_grid();
  const auto& levels = report.config.levels;
  const auto& h = report.config.horizons;
  const double tol = report.config.tol;
  check_levels(levels);

  std::vector<std::uint64_t> m_grid;
  for (double a : levels) {
    const auto m = static_cast<std::uint64_t>(std::max(1.0, std::ceil(a)));
    if (m_grid.empty() || m > m_grid.back()) m_grid.push_back(m);
  }

  report.profiles.push_back(ui_profile(f, levels, h));
  report.profiles.push_back(wui_profile(f, levels, h));
  report.profiles.push_back(wstar_ui_profile(f, m_grid, h));
  const Profile& ui = report.profiles[0];
  const Profile& wui = report.profiles[1];
  const Profile& tails = report.profiles[2];
  const bool linear = f.context().is_linear();

  // Cross-checks.
  CheckResult domination;
  domination.name = "domination wui(a) <= ui(a)";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    record(domination, wui.points[i].result.lower(), ui.points[i].result.upper(), tol,
           "a=" + format_double(levels[i]));
  }
  report.checks.push_back(domination);

  CheckResult chain_lo;
  chain_lo.name = linear ? "sandwich wui(m) <= wsui(m)" : "chain wui(m) <= sui(m)";
  CheckResult chain_hi;
  chain_hi.name = "sandwich wsui(m) <= wui(m-1)";
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    const std::uint64_t m = m_grid[i];
    const EvalResult at_m = sup_members(f, Integrand::excess(static_cast<double>(m)), h);
    record(chain_lo, at_m.lower(), tails.points[i].result.upper(), tol, "m=" + std::to_string(m));
    if (linear) {
      const EvalResult at_prev = sup_members(f, Integrand::excess(static_cast<double>(m - 1)), h);
      record(chain_hi, tails.points[i].result.lower(), at_prev.upper(), tol, "m=" + std::to_string(m));
    }
  }
  report.checks.push_back(chain_lo);
  if (linear) report.checks.push_back(chain_hi);

  CheckResult bounded;
  bounded.name = "boundedness sup E|X| <= wui(C) + 2C";
  const EvalResult mean = sup_members(f, Integrand::abs(), h);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    record(bounded, mean.lower(), wui.points[i].result.upper() + 2.0 * levels[i], tol,
           "C=" + format_double(levels[i]));
  }
  report.checks.push_back(bounded);

  CheckResult monotone;
  monotone.name = "monotone sup-profiles";
  for (const Profile* p : {&ui, &wui, &tails}) {
    ++monotone.evaluated;
    if (!p->is_monotone(tol) && monotone.passed) {
      monotone.passed = false;
      monotone.detail = std::string(to_string(p->criterion)) + " profile increases";
    }
  }
  report.checks.push_back(monotone);

  // Verdicts.
  for (const Profile* p : {&ui, &wui, &tails}) {
    bool all_vanish = true;
    bool any_diverges = false;
    std::string formula;
    CheckResult envelope_check;
    envelope_check.name = "envelope " + std::string(to_string(p->criterion));
    for (const auto& x : f.members()) {
      auto env = f.context().envelope(p->criterion, x);
      if (!env) {
        all_vanish = false;
        continue;
      }
      formula = env->formula;
      if (env->limit == AnalyticEnvelope::Limit::Diverges) {
        any_diverges = true;
        all_vanish = false;
      } else {
        for (const auto& pt : p->points) {
          record(envelope_check, pt.result.lower(), env->bound(pt.level), tol, "level=" + format_double(pt.level));
        }
      }
    }
    if (envelope_check.evaluated > 0) report.checks.push_back(envelope_check);
    if (f.remainder_envelope()) all_vanish = false;

    CriterionVerdict v{p->criterion, Verdict::Inconclusive, ""};
    const EvalResult& last = p->points.back().result;
    if (any_diverges) {
      v.verdict = Verdict::Fail;
      v.reason = "analytic envelope diverges (" + formula + ")";
    } else if (all_vanish) {
      v.verdict = Verdict::CertifiedPass;
      v.reason = "analytic envelope " + formula + " -> 0";
    } else if (last.upper() < report.config.eps_stop && p->is_monotone(tol)) {
      v.verdict = Verdict::EmpiricalPass;
      v.reason = "profile below eps_stop at level " + format_double(p->points.back().level);
    } else {
      v.reason = "final value " + format_double(last.value) + " (" + std::string(to_string(last.certificate)) +
                 ") not below eps_stop " + format_double(report.config.eps_stop);
    }
    report.verdicts.push_back(v);
  }

  for (const auto& c : report.checks) {
    if (!c.passed) throw Error(ErrorKind::InconsistentProfiles, c.name + " failed: " + c.detail);
  }
  return report;
}

}  // namespace uic
