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
#include <numeric>
#include <random>

#include "uicheck/errors.hpp"
#include "uicheck/sublinear.hpp"

namespace uic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-atom contributions: row q holds, for each atom, either P_j({a}) or
// P_j({a}) |x_i(a)|. Rows [0, M) are the measures, then member-major.
struct EventTerms {
  std::size_t measures = 0;
  std::size_t members = 0;
  std::vector<std::vector<double>> rows;
};

EventTerms build_terms(const Family& k, std::size_t n) {
  const std::vector<Measure> ms = materialize(k.context());
  EventTerms t;
  t.measures = ms.size();
  t.members = k.members().size();
  for (const auto& p : ms) {
    std::vector<double> row(n);
    for (std::size_t a = 0; a < n; ++a) row[a] = p.weight(a);
    t.rows.push_back(std::move(row));
  }
  for (const auto& x : k.members()) {
    for (std::size_t j = 0; j < ms.size(); ++j) {
      std::vector<double> row(n);
      for (std::size_t a = 0; a < n; ++a) row[a] = t.rows[j][a] * std::fabs(x(a));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

// Subset sums over `bits` atoms starting at `offset`, indexed [mask * Q + q].
std::vector<double> subset_table(const EventTerms& t, std::size_t offset, std::size_t bits) {
  const std::size_t q_count = t.rows.size();
  const std::size_t masks = std::size_t{1} << bits;
  std::vector<double> table(masks * q_count, 0.0);
  for (std::size_t mask = 1; mask < masks; ++mask) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
    const std::size_t rest = mask & (mask - 1);
    for (std::size_t q = 0; q < q_count; ++q) {
      table[mask * q_count + q] = table[rest * q_count + q] + t.rows[q][offset + low];
    }
  }
  return table;
}

struct EventScore {
  double upper_prob;  // max_j P_j(A)
  double weighted;    // max_{i,j} E_j[1_A |x_i|]
};

template <typename Get>
EventScore score(const EventTerms& t, Get get) {
  EventScore s{-kInf, -kInf};
  for (std::size_t q = 0; q < t.measures; ++q) s.upper_prob = std::max(s.upper_prob, get(q));
  for (std::size_t q = t.measures; q < t.rows.size(); ++q) s.weighted = std::max(s.weighted, get(q));
  return s;
}

}  // namespace

bool Thm31Report::condition_ii_holds() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.delta.has_value(); });
}

Thm31Report check_thm31(const Family& k, std::span<const double> eps, std::size_t subset_budget, std::uint64_t seed,
                        int grid_depth) {
  if (!k.context().space().is_finite()) {
    throw Error(ErrorKind::InvalidArgument, "event search needs a finite atom space");
  }
  if (eps.empty()) throw Error(ErrorKind::InvalidArgument, "no epsilon values given");
  for (double e : eps) {
    if (!(e > 0.0) || !std::isfinite(e)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  }
  if (grid_depth < 0 || grid_depth > 60) throw Error(ErrorKind::InvalidArgument, "grid depth out of range");

  Thm31Report report;
  {
    std::vector<EvalResult> means;
    for (const auto& x : k.members()) means.push_back(k.context().evaluate(Integrand::abs(), x, Horizons{}));
    report.sup_mean = sup_of(means).value;
  }

  const std::size_t n = k.context().space().size();
  const EventTerms terms = build_terms(k, n);
  const std::size_t q_count = terms.rows.size();

  std::vector<double> bad_min(eps.size(), kInf);
  std::vector<std::uint64_t> witness(eps.size(), 0);
  auto consider = [&](const EventScore& s, std::uint64_t mask) {
    ++report.events_examined;
    for (std::size_t e = 0; e < eps.size(); ++e) {
      if (s.weighted >= eps[e] && s.upper_prob < bad_min[e]) {
        bad_min[e] = s.upper_prob;
        witness[e] = mask;
      }
    }
  };

  if (n <= kMaxExactAtoms) {
    const std::size_t low_bits = std::min<std::size_t>(n, 10);
    const std::size_t high_bits = n - low_bits;
    const std::vector<double> low = subset_table(terms, 0, low_bits);
    const std::vector<double> high = subset_table(terms, low_bits, high_bits);
    for (std::size_t hm = 0; hm < (std::size_t{1} << high_bits); ++hm) {
      const double* hrow = &high[hm * q_count];
      for (std::size_t lm = 0; lm < (std::size_t{1} << low_bits); ++lm) {
        const double* lrow = &low[lm * q_count];
        consider(score(terms, [&](std::size_t q) { return hrow[q] + lrow[q]; }),
                 (static_cast<std::uint64_t>(hm) << low_bits) | lm);
      }
    }
  } else {
    report.exhaustive = false;
    report.note = "SpaceTooLargeForExactSearch: " + std::to_string(n) +
                  " atoms; delta is an estimate from sorted-prefix and random events";
    std::vector<char> in(n);
    auto score_event = [&]() {
      return score(terms, [&](std::size_t q) {
        double s = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
          if (in[a]) s += terms.rows[q][a];
        }
        return s;
      });
    };
    for (const auto& x : k.members()) {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return std::fabs(x(a)) > std::fabs(x(b)); });
      std::fill(in.begin(), in.end(), 0);
      for (std::size_t a : order) {
        in[a] = 1;
        consider(score_event(), 0);
      }
    }
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t b = 0; b < subset_budget; ++b) {
      for (auto& bit : in) bit = coin(rng) ? 1 : 0;
      consider(score_event(), 0);
    }
  }

  for (std::size_t e = 0; e < eps.size(); ++e) {
    Thm31Condition c;
    c.eps = eps[e];
    c.worst_event_prob = bad_min[e];
    c.witness_event = witness[e];
    for (int j = 0; j <= grid_depth; ++j) {
      const double delta = std::ldexp(1.0, -j);
      if (delta < bad_min[e]) {
        c.delta = delta;
        break;
      }
    }
    report.conditions.push_back(c);
  }
  return report;
}

}  // namespace uic
