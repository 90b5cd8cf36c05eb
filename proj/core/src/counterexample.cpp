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

#include <algorithm>
#include <cmath>
#include <limits>

#include "uicheck/errors.hpp"
#include "uicheck/sublinear.hpp"

namespace uic {

namespace {

// Weight P_k(k) = 1/(k ln k).
double atom_weight(double k) { return 1.0 / (k * std::log(k)); }

// max over integers n >= n_min of (1 - a/n) / ln n, with n_min >= 2 and
// n_min > a. The function of x is increasing while a(1 + ln x) > x and
// decreasing after, so the maximum sits at the integer neighbours of the
// root of x = a(1 + ln x) (or at n_min when that root lies below it).
double max_ramp_over_log(double a, double n_min) {
  auto g = [a](double n) { return (1.0 - a / n) / std::log(n); };
  auto rising = [a](double x) { return a * (1.0 + std::log(x)) - x; };
  if (a <= 0.0 || rising(n_min) <= 0.0) return g(n_min);

  double lo = n_min, hi = 2.0 * n_min;
  while (rising(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 0.5; ++it) {
    const double mid = 0.5 * (lo + hi);
    (rising(mid) > 0.0 ? lo : hi) = mid;
  }
  double best = g(n_min);
  for (double c = std::floor(lo) - 1.0; c <= std::ceil(hi) + 1.0; c += 1.0) {
    if (c >= n_min) best = std::max(best, g(c));
  }
  return best;
}

class RemarkPlugin final : public ClosedFormPlugin {
 public:
  explicit RemarkPlugin(std::uint64_t n_max)
      : n_max_(n_max),
        x_(RandomVariable::countable([](std::uint64_t n) { return static_cast<double>(n); },
                                     [](std::uint64_t n) { return static_cast<double>(n); }, std::nullopt, true)) {}

  std::string name() const override { return std::string(kRemarkPluginName); }
  const AtomSpace& space() const override { return space_; }
  std::uint64_t first_index() const override { return 2; }
  std::uint64_t max_index() const override { return n_max_; }

  Measure measure_at(std::uint64_t k) const override {
    if (k < 2) throw Error(ErrorKind::InvalidArgument, "counterexample measures start at index 2");
    const double w = atom_weight(static_cast<double>(k));
    return Measure::sparse(space_, {{0, 1.0 - w}, {k, w}});
  }

  const RandomVariable& x() const { return x_; }

  EvalResult sup(const Integrand& f, const RandomVariable& x) const override {
    if (!x.same_as(x_)) {
      throw Error(ErrorKind::UnsupportedIntegrand, name() + " only has closed forms for its own X(n) = n");
    }
    const double a = f.level();
    switch (f.kind()) {
      case Integrand::Kind::Signed:
      case Integrand::Kind::Abs: return EvalResult::exact(1.0 / std::log(2.0));
      case Integrand::Kind::Truncated: return EvalResult::exact(1.0 / std::log(std::max(2.0, std::ceil(a))));
      case Integrand::Kind::Excess: return EvalResult::exact(max_ramp_over_log(a, std::max(2.0, std::floor(a) + 1.0)));
      case Integrand::Kind::Capped: return EvalResult::exact(std::min(a, 2.0) / (2.0 * std::log(2.0)));
      case Integrand::Kind::TailProb: return EvalResult::exact(atom_weight(std::max(2.0, std::floor(a) + 1.0)));
      case Integrand::Kind::AtLeastProb:
        if (a == 0.0) return EvalResult::exact(1.0);
        return EvalResult::exact(atom_weight(std::max(2.0, std::ceil(a))));
      case Integrand::Kind::Lower: return EvalResult::exact(a >= 2.0 ? 1.0 / std::log(2.0) : 0.0);
      case Integrand::Kind::Phi: return EvalResult::exact(phi_sup(f.thresholds()));
    }
    throw Error(ErrorKind::UnsupportedIntegrand, "unsupported integrand " + f.describe());
  }

  std::optional<AnalyticEnvelope> envelope(Criterion c, const RandomVariable& x) const override {
    if (!x.same_as(x_)) return std::nullopt;
    switch (c) {
      case Criterion::UI:
      case Criterion::W_UI:
        // W-UI is dominated by UI, so the same bound serves both.
        return AnalyticEnvelope{[](double a) { return 1.0 / std::log(std::max(2.0, std::ceil(a))); },
                                AnalyticEnvelope::Limit::Vanishes, "1/ln(max(2,ceil(a)))"};
      case Criterion::S_UI:
      case Criterion::WSTAR_UI:
        return AnalyticEnvelope{[](double) { return std::numeric_limits<double>::infinity(); },
                                AnalyticEnvelope::Limit::Diverges, "sum_n 1/((n+1)ln(n+1)) = +inf"};
      default: return std::nullopt;
    }
  }

 private:
  // sup_k phi(k) / (k ln k). Below the last threshold phi is scanned; past
  // it phi(k) = K k - S and the ramp argument applies with a = S/K.
  static double phi_sup(const std::vector<std::uint64_t>& t) {
    constexpr std::uint64_t kScanLimit = std::uint64_t{1} << 26;
    if (t.back() > kScanLimit) {
      throw Error(ErrorKind::UnsupportedIntegrand, "phi thresholds too large for the closed-form scan");
    }
    const Integrand phi = Integrand::phi(t);
    double best = 0.0;
    for (std::uint64_t k = std::max<std::uint64_t>(2, t.front() + 1); k <= t.back(); ++k) {
      const double kd = static_cast<double>(k);
      best = std::max(best, phi(kd) * atom_weight(kd));
    }
    double sum = 0.0;
    for (auto nk : t) sum += static_cast<double>(nk);
    const double count = static_cast<double>(t.size());
    const double tail = count * max_ramp_over_log(sum / count, std::max(2.0, static_cast<double>(t.back()) + 1.0));
    return std::max(best, tail);
  }

  std::uint64_t n_max_;
  AtomSpace space_ = AtomSpace::countable();
  RandomVariable x_;
};

}  // namespace

Counterexample build_counterexample(std::uint64_t n_max) {
  if (n_max < 3) throw Error(ErrorKind::InvalidArgument, "counterexample needs n_max >= 3");
  auto plugin = std::make_shared<const RemarkPlugin>(n_max);
  RandomVariable x = plugin->x();
  auto e = std::make_shared<const SublinearExpectation>(MeasureSet::closed_form(plugin));
  return {std::move(e), std::move(x)};
}

}  // namespace uic
