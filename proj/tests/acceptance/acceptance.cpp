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

// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "uicheck/errors.hpp"
#include "uicheck/expr.hpp"
#include "uicheck/family.hpp"
#include "uicheck/poussin.hpp"
#include "uicheck/sublinear.hpp"

namespace {

using namespace uic;
namespace ut = uic::testing;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct AcceptanceCheck {
  int id;
  std::string title;
  double budget_seconds;  // 0 means no runtime bound
  std::function<Outcome()> run;
};

std::string fmt(double v) { return format_double(v); }

// Sandwich, Eq-1.4 and decomposition criteria share this corpus.
std::vector<ut::FiniteModel> corpus() {
  std::mt19937_64 rng(20170601);
  std::vector<ut::FiniteModel> out;
  for (int i = 0; i < 200; ++i) out.push_back(ut::random_model(rng, 64, 100.0));
  return out;
}

Outcome counterexample_ui() {
  const std::vector<double> levels{10, 100, 1000, 1e6};
  std::ostringstream out, err;
  const int code = cli::run({"profile", "--plugin", "remark-counterexample", "--criterion", "ui", "--levels",
                             "10,100,1000,1000000", "--format", "csv"},
                            out, err);
  if (code != cli::kPass) return {false, "profile exited " + std::to_string(code) + ": " + err.str()};

  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::vector<double> values;
  while (std::getline(in, line)) {
    const auto a = line.find(',');
    values.push_back(std::stod(line.substr(a + 1, line.find(',', a + 1) - a - 1)));
  }
  if (values.size() != levels.size()) return {false, "expected 4 rows, got " + std::to_string(values.size())};

  const Counterexample ce = build_counterexample(1000000);
  double worst_closed = 0.0, worst_brute = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double m = levels[i];
    worst_closed = std::max(worst_closed, std::fabs(values[i] - 1.0 / std::log(m)));
    // Per-index maxima over k = 2..10^6 from materialized measures.
    const double lib = ce.expectation->brute_force(Integrand::truncated(m), ce.x, 1000000).value;
    // Independent loop: E_k[|X| 1{|X| >= m}] = k P_k(k) when k >= m.
    long double best = 0.0L;
    for (std::uint64_t k = 2; k <= 1000000; ++k) {
      if (static_cast<double>(k) < m) continue;
      const long double p = 1.0L / (static_cast<long double>(k) * std::log(static_cast<long double>(k)));
      best = std::max(best, static_cast<long double>(k) * p);
    }
    worst_brute = std::max({worst_brute, std::fabs(values[i] - lib), std::fabs(values[i] - static_cast<double>(best))});
  }
  const bool ok = worst_closed <= 1e-12 && worst_brute <= 1e-12;
  return {ok, "max |value - 1/ln m| = " + fmt(worst_closed) + ", max |value - brute force| = " + fmt(worst_brute)};
}

Outcome counterexample_sui() {
  const Counterexample ce = build_counterexample(1000000);
  Family k({ce.x}, ce.expectation);
  const std::vector<std::uint64_t> start{2};
  const double s5 = sle_sui_profile(k, start, Horizons{1 << 16, 100000}).points[0].result.value;
  const double s7 = sle_sui_profile(k, start, Horizons{1 << 16, 10000000}).points[0].result.value;

  // Direct summation, and the integral comparison
  // ln ln(N+2) - ln ln 3 <= sum_{n=2}^N 1/((n+1) ln(n+1)).
  long double direct = 0.0L;
  for (std::uint64_t n = 2; n <= 10000000; ++n) {
    const long double t = static_cast<long double>(n + 1);
    direct += 1.0L / (t * std::log(t));
  }
  const double integral = std::log(std::log(10000002.0)) - std::log(std::log(3.0));
  const bool ok = s7 > 2.0 && s7 - s5 >= 0.1 && std::fabs(s7 - static_cast<double>(direct)) <= 1e-9 * s7 &&
                  s7 >= integral;
  return {ok, "S(1e5) = " + fmt(s5) + ", S(1e7) = " + fmt(s7) + ", integral bound " + fmt(integral)};
}

Outcome sandwich_suite() {
  std::size_t checks = 0, violations = 0, oracle_mismatch = 0;
  for (const auto& m : corpus()) {
    const auto x = m.variable();
    const auto p = m.measure();
    for (std::uint64_t k = 1; k <= 110; ++k) {
      const double lo = excess(x, p, static_cast<double>(k)).value;
      const double mid = tail_sum(x, p, k).value;
      const double hi = excess(x, p, static_cast<double>(k - 1)).value;
      ++checks;
      if (lo > mid + 1e-9 || mid > hi + 1e-9) ++violations;
      if (std::fabs(mid - static_cast<double>(ut::tail_sum(m, k, 110))) > 1e-9 ||
          std::fabs(lo - static_cast<double>(ut::excess(m, k))) > 1e-9) {
        ++oracle_mismatch;
      }
    }
  }
  return {violations == 0 && oracle_mismatch == 0, std::to_string(checks) + " checks, " +
                                                       std::to_string(violations) + " violations, " +
                                                       std::to_string(oracle_mismatch) + " oracle mismatches"};
}

Outcome tail_bound_suite() {
  std::size_t violations = 0;
  for (const auto& m : corpus()) {
    const double s = tail_sum(m.variable(), m.measure(), 1).value;
    const double e = expectation(m.variable(), m.measure()).value;
    if (s > e + 1e-9 || e > 1.0 + s + 1e-9) ++violations;
  }
  return {violations == 0, "200 models, " + std::to_string(violations) + " violations"};
}

Outcome decomposition_suite() {
  std::size_t checks = 0, violations = 0;
  double worst = 0.0;
  for (const auto& m : corpus()) {
    const auto x = m.variable();
    const auto p = m.measure();
    const double e = expectation(x, p).value;
    for (int i = 0; i <= 440; ++i) {
      const double a = i * 0.25;
      const double gap = std::fabs(capped(x, p, a).value + excess(x, p, a).value - e);
      worst = std::max(worst, gap);
      ++checks;
      if (gap > 1e-12) ++violations;
    }
  }
  return {violations == 0, std::to_string(checks) + " checks, worst gap " + fmt(worst)};
}

Outcome axioms_suite() {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> atoms(1, 16), count(1, 6);
  std::size_t violations = 0;
  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const std::size_t n = atoms(rng);
    std::vector<Measure> ms;
    for (std::size_t j = count(rng); j > 0; --j) ms.push_back(Measure::finite(ut::random_weights(rng, n)));
    const SublinearExpectation e(MeasureSet::explicit_set(std::move(ms)));
    const AxiomReport r = check_axioms(e, 500, 1000 + s, 1e-12, false);
    violations += r.violations;
    worst = std::max({worst, r.monotonicity, r.constant, r.subadditivity, r.homogeneity});
  }
  return {violations == 0, "20 sets x 500 trials, " + std::to_string(violations) + " violations, worst " + fmt(worst)};
}

Outcome poussin_suite() {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> members(1, 4), sets(0, 3);
  const double budget = 1.0 - std::ldexp(1.0, -20);
  std::size_t failures = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    if (failures++ == 0) first = what;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 40;
    std::vector<RandomVariable> xs;
    for (int i = members(rng); i > 0; --i) xs.push_back(RandomVariable::finite(ut::random_values(rng, n, 100.0)));
    const int set_size = sets(rng);
    std::unique_ptr<Family> k;
    if (set_size == 0) {
      k = std::make_unique<Family>(xs, Measure::finite(ut::random_weights(rng, n)));
    } else {
      std::vector<Measure> ms;
      for (int j = 0; j <= set_size; ++j) ms.push_back(Measure::finite(ut::random_weights(rng, n)));
      k = std::make_unique<Family>(
          xs, std::make_shared<const SublinearExpectation>(MeasureSet::explicit_set(std::move(ms))));
    }
    const PhiFunction phi = find_thresholds(*k, 20);
    const PhiVerification v = verify_phi(*k, phi, PhiProvenance::Searched);
    if (!(v.sup_phi <= budget)) fail("trial " + std::to_string(trial) + ": sup " + fmt(v.sup_phi));
    for (const auto& t : v.terms) {
      if (!(t.value < t.budget)) fail("trial " + std::to_string(trial) + ": term at " + std::to_string(t.threshold));
    }
    if (!v.growth_nondecreasing) fail("trial " + std::to_string(trial) + ": phi(n)/n decreases");
    if (!thresholds_minimal(*k, phi)) fail("trial " + std::to_string(trial) + ": thresholds not minimal");
  }
  return {failures == 0, "50 families, K = 20, " + std::to_string(failures) + " failures" +
                             (first.empty() ? "" : " (first: " + first + ")")};
}

Outcome characterization_suite() {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<std::size_t> atoms(1, 12), members(1, 4), sets(1, 3);
  const std::vector<double> eps{0.5, 0.1, 0.01};
  std::size_t failures = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = atoms(rng);
    std::vector<RandomVariable> xs;
    for (std::size_t i = members(rng); i > 0; --i) xs.push_back(RandomVariable::finite(ut::random_values(rng, n, 100.0)));
    std::vector<Measure> ms;
    for (std::size_t j = sets(rng); j > 0; --j) ms.push_back(Measure::finite(ut::random_weights(rng, n)));
    Family k(xs, std::make_shared<const SublinearExpectation>(MeasureSet::explicit_set(std::move(ms))));
    const Thm31Report r = check_thm31(k, eps);
    if (!r.exhaustive || !std::isfinite(r.sup_mean) || !r.condition_ii_holds()) ++failures;
    for (const auto& c : r.conditions) {
      if (c.delta && !(*c.delta > 0.0)) ++failures;
    }
  }

  const auto [w, dyadic] = ut::dyadic_non_ui(16);
  std::vector<RandomVariable> xs;
  for (const auto& m : dyadic) xs.push_back(RandomVariable::finite(m));
  Family bad(xs, Measure::finite(w));
  const std::vector<double> half{0.5};
  const Thm31Report r = check_thm31(bad, half);
  const bool non_ui_fails = r.exhaustive && !r.conditions[0].delta.has_value();
  return {failures == 0 && non_ui_fails, "20 UI families, " + std::to_string(failures) +
                                             " failures; non-UI family at eps 0.5: " +
                                             (non_ui_fails ? "no delta on the grid" : "delta found")};
}

Outcome singleton_suite() {
  std::mt19937_64 rng(34);
  double worst = 0.0;
  std::vector<double> levels;
  for (int a = 0; a <= 110; ++a) levels.push_back(a * 1.0);
  std::vector<std::uint64_t> starts;
  for (std::uint64_t m = 1; m <= 110; ++m) starts.push_back(m);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = ut::random_model(rng, 64, 100.0);
    Family classical({m.variable()}, m.measure());
    Family single({m.variable()},
                  std::make_shared<const SublinearExpectation>(MeasureSet::explicit_set({m.measure()})));
    auto compare = [&](const Profile& a, const Profile& b) {
      for (std::size_t i = 0; i < a.points.size(); ++i) {
        worst = std::max(worst, std::fabs(a.points[i].result.value - b.points[i].result.value));
      }
    };
    compare(ui_profile(classical, levels), sle_ui_profile(single, levels));
    compare(wui_profile(classical, levels), sle_wui_profile(single, levels));
    compare(wstar_ui_profile(classical, starts), sle_sui_profile(single, starts));
  }
  return {worst <= 1e-15, "50 models, worst difference " + fmt(worst)};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism_suite() {
  const fs::path models = UICHECK_MODELS_DIR;
  const fs::path tmp = fs::temp_directory_path() / "uicheck_acceptance";
  fs::create_directories(tmp);
  std::vector<std::vector<std::string>> commands;
  for (const auto& entry : fs::directory_iterator(models)) {
    if (entry.path().extension() != ".json") continue;
    const std::string m = entry.path().string();
    commands.push_back({"profile", "--model", m, "--criterion", "ui", "--format", "csv"});
    commands.push_back({"profile", "--model", m, "--criterion", "wsui", "--format", "csv"});
    commands.push_back({"diagnose", "--model", m, "--format", "csv"});
    commands.push_back({"phi", "--model", m, "--k", "4", "--format", "csv"});
    commands.push_back({"axioms", "--model", m, "--trials", "100", "--format", "csv"});
    commands.push_back({"sandwich", "--model", m, "--format", "csv"});
  }
  std::sort(commands.begin(), commands.end());

  std::size_t differing = 0, empty = 0;
  std::string first;
  for (const auto& cmd : commands) {
    std::string outputs[2];
    int codes[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = tmp / ("run" + std::to_string(rep) + ".csv");
      fs::remove(out);
      std::string line = std::string("\"") + UICHECK_CLI_PATH + "\"";
      for (const auto& a : cmd) line += " \"" + a + "\"";
      line += " --out \"" + out.string() + "\" >/dev/null 2>&1";
      const int status = std::system(line.c_str());
      codes[rep] = status;
      outputs[rep] = read_file(out);
    }
    std::string joined;
    for (const auto& a : cmd) joined += a + " ";
    if (outputs[0] != outputs[1] || codes[0] != codes[1]) {
      if (differing++ == 0) first = joined;
    }
    if (outputs[0].empty()) ++empty;
  }
  fs::remove_all(tmp);
  return {differing == 0, std::to_string(commands.size()) + " commands run twice, " + std::to_string(differing) +
                              " differ" + (first.empty() ? "" : " (first: " + first + ")") + ", " +
                              std::to_string(empty) + " without output"};
}

}  // namespace

int main() {
  const std::vector<AcceptanceCheck> criteria = {
      {1, "counterexample UI profile equals 1/ln m", 5.0, counterexample_ui},
      {2, "counterexample tail sums diverge", 30.0, counterexample_sui},
      {3, "tail-sum sandwich on 200 models", 0.0, sandwich_suite},
      {4, "tail-sum bounds on E|X|", 0.0, tail_bound_suite},
      {5, "capped + excess = expectation", 0.0, decomposition_suite},
      {6, "sublinear expectation axioms", 0.0, axioms_suite},
      {7, "de La Vallee Poussin construction", 10.0, poussin_suite},
      {8, "two-condition UI characterization", 0.0, characterization_suite},
      {9, "singleton measure set reduction", 0.0, singleton_suite},
      {10, "CLI output is deterministic", 0.0, determinism_suite},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && secs > c.budget_seconds) {
      o.pass = false;
      o.detail += "; over the " + fmt(c.budget_seconds) + " s budget";
    }
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << o.detail << "; "
              << time << ")" << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
