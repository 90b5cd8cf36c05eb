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

#ifndef UICHECK_MEASURE_HPP
#define UICHECK_MEASURE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace uic {

/// Atoms are the contiguous indices 0..count-1, or every nonnegative integer.
class AtomSpace {
 public:
  static AtomSpace finite(std::size_t count);
  static AtomSpace countable() { return AtomSpace(std::nullopt); }

  bool is_finite() const { return count_.has_value(); }
  /// Number of atoms; only meaningful for finite spaces.
  std::size_t size() const { return count_.value_or(0); }
  bool contains(std::uint64_t atom) const { return !count_ || atom < *count_; }

  friend bool operator==(const AtomSpace&, const AtomSpace&) = default;

 private:
  explicit AtomSpace(std::optional<std::size_t> count) : count_(count) {}
  std::optional<std::size_t> count_;
};

using IndexFn = std::function<double(std::uint64_t)>;

inline constexpr double kDefaultNormalizationTol = 1e-12;

/// A probability measure on an AtomSpace.
///
/// Either finitely supported (an ascending list of atoms with weights; a
/// dense finite measure is the special case of all atoms) or given on a
/// countable space by a weight function p(i) together with a tail-mass bound
/// T(M) >= sum_{i>M} p(i).
class Measure {
 public:
  /// Dense weights on AtomSpace::finite(weights.size()).
  static Measure finite(std::vector<double> weights, double tol = kDefaultNormalizationTol);
  /// Finite support on an arbitrary space. Atoms must be strictly ascending.
  static Measure sparse(AtomSpace space, std::vector<std::pair<std::uint64_t, double>> atoms,
                        double tol = kDefaultNormalizationTol);
  static Measure countable(IndexFn weight, IndexFn tail_mass, double tol = kDefaultNormalizationTol);

  const AtomSpace& space() const { return space_; }
  double normalization_tol() const { return tol_; }
  bool has_finite_support() const { return !density_; }

  /// Support atoms and weights (finite support only).
  std::span<const std::uint64_t> atoms() const { return atoms_; }
  std::span<const double> weights() const { return weights_; }

  double weight(std::uint64_t atom) const;
  /// Bound on the mass beyond `horizon`; zero for finite support.
  double tail_mass(std::uint64_t horizon) const;

  /// Checks the countable normalization invariant at a horizon M:
  /// sum_{i<=M} p(i) <= 1 + tol and sum_{i<=M} p(i) + T(M) >= 1 - tol.
  void check_horizon(std::uint64_t horizon, double partial_mass) const;

 private:
  Measure() = default;
  struct Density {
    IndexFn weight;
    IndexFn tail;
  };
  AtomSpace space_ = AtomSpace::countable();
  double tol_ = kDefaultNormalizationTol;
  std::vector<std::uint64_t> atoms_;
  std::vector<double> weights_;
  std::shared_ptr<const Density> density_;
};

}  // namespace uic

#endif  // UICHECK_MEASURE_HPP
