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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "uicheck/errors.hpp"
#include "uicheck/family.hpp"
#include "uicheck/sublinear.hpp"

namespace uic {
namespace {

std::shared_ptr<const SublinearExpectation> set_of(std::vector<Measure> ms) {
  return std::make_shared<const SublinearExpectation>(MeasureSet::explicit_set(std::move(ms)));
}

std::vector<Measure> random_set(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  std::vector<Measure> ms;
  for (std::size_t j = 0; j < count; ++j) ms.push_back(Measure::finite(testing::random_weights(rng, n)));
  return ms;
}

// inf over measures: superadditive, so sub-additivity must fail somewhere.
class InfExpectation final : public ExpectationOperator {
 public:
  explicit InfExpectation(std::vector<Measure> ms) : ms_(std::move(ms)) {}
  EvalResult evaluate(const Integrand& f, const RandomVariable& x, const Horizons& h) const override {
    std::vector<EvalResult> parts;
    for (const auto& p : ms_) parts.push_back(integrate(f, x, p, h.atoms));
    return inf_of(parts);
  }
  const AtomSpace& space() const override { return ms_.front().space(); }
  bool is_linear() const override { return false; }
  std::string describe() const override { return "inf"; }

 private:
  std::vector<Measure> ms_;
};

TEST(MeasureSetTest, ExplicitSetTakesTheMaximum) {
  auto e = set_of({Measure::finite({1.0 / 3, 1.0 / 3, 1.0 / 3}), Measure::finite({0.0, 0.0, 1.0})});
  const auto x = RandomVariable::finite({1, 2, 3});
  const EvalResult r = sup_expectation(*e, Integrand::abs(), x);
  EXPECT_EQ(r.value, 3.0);
  EXPECT_TRUE(r.is_exact());
  EXPECT_FALSE(e->is_linear());

  auto single = set_of({Measure::finite({0.25, 0.75})});
  EXPECT_TRUE(single->is_linear());
  EXPECT_NEAR(sup_expectation(*single, Integrand::abs(), RandomVariable::finite({4, 8})).value, 7.0, 1e-15);
}

TEST(MeasureSetTest, RejectsInconsistentSets) {
  EXPECT_THROW(MeasureSet::explicit_set({}), Error);
  EXPECT_THROW(MeasureSet::explicit_set({Measure::finite({1.0}), Measure::finite({0.5, 0.5})}), Error);
}

TEST(MeasureSetTest, IndexedCertificateFollowsTheStrategy) {
  // P_k = point mass at atom k on {0..9}; X(i) = 10 - i decreases in k.
  auto make = [](bool monotone) {
    return std::make_shared<const SublinearExpectation>(MeasureSet::indexed(
        AtomSpace::finite(10), 1,
        [](std::uint64_t k) { return Measure::sparse(AtomSpace::finite(10), {{k, 1.0}}); }, {5, monotone}));
  };
  std::vector<double> v;
  for (int i = 0; i < 10; ++i) v.push_back(10 - i);
  const auto x = RandomVariable::finite(v);
  const EvalResult lower = make(false)->evaluate(Integrand::abs(), x, {});
  EXPECT_EQ(lower.value, 9.0);
  EXPECT_EQ(lower.certificate, Certificate::LowerBound);
  const EvalResult exact = make(true)->evaluate(Integrand::abs(), x, {});
  EXPECT_EQ(exact.value, 9.0);
  EXPECT_TRUE(exact.is_exact());
  EXPECT_EQ(make(true)->measure_set().measures().size(), 5u);
}

TEST(AxiomsTest, ExplicitSetsSatisfyAllAxioms) {
  std::mt19937_64 rng(5);
  for (int s = 0; s < 5; ++s) {
    auto e = set_of(random_set(rng, 1 + s * 3, 1 + s));
    const AxiomReport r = check_axioms(*e, 500, 100 + s);
    EXPECT_TRUE(r.ok()) << r.witness;
    EXPECT_LE(r.subadditivity, 1e-12);
    EXPECT_LE(r.constant, 1e-12);
  }
  auto e = set_of({Measure::finite({0.5, 0.5})});
  EXPECT_EQ(e->evaluate(Integrand::signed_value(), RandomVariable::constant(AtomSpace::finite(2), -3.0), {}).value,
            -3.0);
  EXPECT_EQ(e->evaluate(Integrand::signed_value(), RandomVariable::finite({0, 0}), {}).value, 0.0);
  EXPECT_THROW(check_axioms(*e, 0, 1), Error);
}

TEST(AxiomsTest, DetectsSuperadditiveFunctional) {
  InfExpectation bogus({Measure::finite({1.0, 0.0}), Measure::finite({0.0, 1.0})});
  try {
    check_axioms(bogus, 200, 3);
    FAIL() << "no violation reported";
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::AxiomViolation);
  }
  const AxiomReport r = check_axioms(bogus, 200, 3, 1e-12, false);
  EXPECT_FALSE(r.ok());
  EXPECT_GT(r.subadditivity, 1e-12);
  EXPECT_NE(r.witness.find("sub-additivity"), std::string::npos) << r.witness;
}

TEST(CounterexampleTest, ClosedFormsMatchPerIndexBruteForce) {
  const Counterexample ce = build_counterexample();
  const SublinearExpectation& e = *ce.expectation;
  for (double m : {3.0, 10.0, 100.0, 1000.0}) {
    const EvalResult closed = e.evaluate(Integrand::truncated(m), ce.x, {});
    EXPECT_TRUE(closed.is_exact());
    EXPECT_NEAR(closed.value, 1.0 / std::log(m), 1e-15);
    EXPECT_NEAR(e.brute_force(Integrand::truncated(m), ce.x, 20000).value, closed.value, 1e-12);
  }
  EXPECT_NEAR(e.evaluate(Integrand::truncated(10), ce.x, {}).value, 0.4342944819, 1e-10);

  const Measure p5 = e.measure_set().plugin()->measure_at(5);
  EXPECT_NEAR(expectation(ce.x, p5).value, 1.0 / std::log(5.0), 1e-15);
  EXPECT_NEAR(truncated_above(ce.x, p5, 3).value, 1.0 / std::log(5.0), 1e-15);

  for (std::uint64_t n : {2u, 5u, 50u}) {
    const double want = 1.0 / ((n + 1) * std::log(n + 1.0));
    const EvalResult up = e.evaluate(Integrand::tail_prob(static_cast<double>(n)), ce.x, {});
    EXPECT_NEAR(up.value, want, 1e-15);
    EXPECT_NEAR(e.brute_force(Integrand::tail_prob(static_cast<double>(n)), ce.x, 5000).value, want, 1e-15);
  }
  EXPECT_NEAR(e.evaluate(Integrand::tail_prob(2), ce.x, {}).value, 0.3034, 1e-4);
  EXPECT_NEAR(e.evaluate(Integrand::capped(2), ce.x, {}).value, 1.0 / std::log(2.0), 1e-15);
}

TEST(CounterexampleTest, UiButTailSumsDiverge) {
  const Counterexample ce = build_counterexample();
  Family k({ce.x}, ce.expectation);
  const std::vector<double> levels{10, 100, 1000};
  const Profile ui = sle_ui_profile(k, levels);
  const Profile wui = sle_wui_profile(k, levels);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    EXPECT_NEAR(ui.points[i].result.value, 1.0 / std::log(levels[i]), 1e-15);
    EXPECT_LE(wui.points[i].result.value, ui.points[i].result.value + 1e-12);
  }
  const std::vector<std::uint64_t> m{2};
  Horizons small{1 << 16, 1000};
  Horizons large{1 << 16, 100000};
  const double s_small = sle_sui_profile(k, m, small).points[0].result.value;
  const double s_large = sle_sui_profile(k, m, large).points[0].result.value;
  EXPECT_GT(s_large, s_small + 0.5);
  EXPECT_EQ(sle_sui_profile(k, m, small).criterion, Criterion::S_UI);
}

TEST(SleProfileTest, SingletonSetReducesToClassicalProfiles) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = testing::random_model(rng, 30, 50.0);
    Family classical({m.variable()}, m.measure());
    Family sle({m.variable()}, set_of({m.measure()}));
    std::vector<double> levels;
    for (int a = 0; a <= 55; a += 5) levels.push_back(a);
    const Profile a1 = ui_profile(classical, levels), b1 = sle_ui_profile(sle, levels);
    const Profile a2 = wui_profile(classical, levels), b2 = sle_wui_profile(sle, levels);
    for (std::size_t i = 0; i < levels.size(); ++i) {
      EXPECT_NEAR(a1.points[i].result.value, b1.points[i].result.value, 1e-15);
      EXPECT_NEAR(a2.points[i].result.value, b2.points[i].result.value, 1e-15);
    }
    const std::vector<std::uint64_t> ms{1, 2, 5, 20, 51};
    const Profile a3 = wstar_ui_profile(classical, ms), b3 = sle_sui_profile(sle, ms);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      EXPECT_NEAR(a3.points[i].result.value, b3.points[i].result.value, 1e-15);
    }
  }
}

TEST(SleProfileTest, ChainAndAbsoluteContinuityOnRandomSets) {
  std::mt19937_64 rng(78);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const auto ms = random_set(rng, n, 1 + trial % 4);
    auto e = set_of(ms);
    const auto xv = testing::random_values(rng, n, 20.0);
    Family k({RandomVariable::finite(xv)}, e);

    std::vector<std::uint64_t> starts;
    std::vector<double> levels;
    for (std::uint64_t m = 1; m <= 21; ++m) {
      starts.push_back(m);
      levels.push_back(static_cast<double>(m));
    }
    const Profile ui = sle_ui_profile(k, levels);
    const Profile wui = sle_wui_profile(k, levels);
    const Profile sui = sle_sui_profile(k, starts);
    for (std::size_t i = 0; i < starts.size(); ++i) {
      EXPECT_LE(wui.points[i].result.value, sui.points[i].result.value + 1e-9);
      EXPECT_LE(wui.points[i].result.value, ui.points[i].result.value + 1e-9);
    }

    for (double c : {0.5, 2.0, 7.0}) {
      const double w = sle_wui_profile(k, std::vector<double>{c}).points[0].result.value;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        double e_xa = 0.0, e_a = 0.0;
        for (const auto& p : ms) {
          long double sx = 0.0L, sa = 0.0L;
          for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) {
              sx += p.weight(i) * std::fabs(xv[i]);
              sa += p.weight(i);
            }
          }
          e_xa = std::max(e_xa, static_cast<double>(sx));
          e_a = std::max(e_a, static_cast<double>(sa));
        }
        EXPECT_LE(e_xa, w + 2.0 * c * e_a + 1e-9);
      }
    }
  }
}

TEST(CharacterizationTest, UiFamilyHasPositiveDelta) {
  std::mt19937_64 rng(31);
  std::vector<RandomVariable> xs;
  for (int i = 0; i < 3; ++i) xs.push_back(RandomVariable::finite(testing::random_values(rng, 8, 10.0)));
  Family k(xs, set_of(random_set(rng, 8, 2)));
  const std::vector<double> eps{0.5, 0.1, 0.01};
  const Thm31Report r = check_thm31(k, eps);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.events_examined, 256u);
  EXPECT_TRUE(r.condition_ii_holds());
  for (const auto& c : r.conditions) {
    ASSERT_TRUE(c.delta);
    EXPECT_GT(*c.delta, 0.0);
    EXPECT_LT(*c.delta, c.worst_event_prob);
  }
}

TEST(CharacterizationTest, ZeroVariableAcceptsEveryDelta) {
  Family k({RandomVariable::finite({0, 0, 0, 0})}, Measure::finite({0.25, 0.25, 0.25, 0.25}));
  const std::vector<double> eps{0.5, 0.1, 0.01};
  const Thm31Report r = check_thm31(k, eps);
  EXPECT_EQ(r.sup_mean, 0.0);
  for (const auto& c : r.conditions) EXPECT_EQ(c.delta, 1.0);
}

TEST(CharacterizationTest, DyadicNonUiFamilyFails) {
  const auto [w, members] = testing::dyadic_non_ui(16);
  std::vector<RandomVariable> xs;
  for (const auto& m : members) xs.push_back(RandomVariable::finite(m));
  Family k(xs, Measure::finite(w));
  const std::vector<double> eps{0.5};
  const Thm31Report r = check_thm31(k, eps);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_NEAR(r.sup_mean, 1.0, 1e-15);
  EXPECT_FALSE(r.condition_ii_holds());
  EXPECT_LT(r.conditions[0].worst_event_prob, std::ldexp(1.0, -16));
}

TEST(CharacterizationTest, LargeSpacesAreFlaggedHeuristic) {
  std::mt19937_64 rng(32);
  std::vector<double> w = testing::random_weights(rng, 24);
  Family k({RandomVariable::finite(testing::random_values(rng, 24, 5.0))}, Measure::finite(w));
  const std::vector<double> eps{0.1};
  const Thm31Report r = check_thm31(k, eps, 256);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_NE(r.note.find("SpaceTooLargeForExactSearch"), std::string::npos);
  EXPECT_THROW(check_thm31(k, std::vector<double>{-0.5}), Error);
}

}  // namespace
}  // namespace uic
