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

#include "uicheck/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uicheck/errors.hpp"
#include "uicheck/expr.hpp"
#include "uicheck/summation.hpp"

namespace uic {

namespace {

void check_tol(double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::InvalidArgument, "normalization tolerance must be a finite nonnegative number");
  }
}

void check_weight(double w, std::uint64_t atom) {
  if (!std::isfinite(w)) {
    throw Error(ErrorKind::NegativeWeight, "weight at atom " + std::to_string(atom) + " is not finite");
  }
  if (w < 0.0) {
    throw Error(ErrorKind::NegativeWeight,
                "weight at atom " + std::to_string(atom) + " is negative (" + format_double(w) + ")");
  }
}

}  // namespace

AtomSpace AtomSpace::finite(std::size_t count) {
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "finite atom space needs at least one atom");
  return AtomSpace(count);
}

Measure Measure::finite(std::vector<double> weights, double tol) {
  std::vector<std::pair<std::uint64_t, double>> atoms;
  atoms.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) atoms.emplace_back(i, weights[i]);
  return sparse(AtomSpace::finite(weights.size()), std::move(atoms), tol);
}

Measure Measure::sparse(AtomSpace space, std::vector<std::pair<std::uint64_t, double>> atoms, double tol) {
  check_tol(tol);
  if (atoms.empty()) throw Error(ErrorKind::InvalidArgument, "measure has empty support");
  Measure m;
  m.space_ = space;
  m.tol_ = tol;
  m.atoms_.reserve(atoms.size());
  m.weights_.reserve(atoms.size());
  CompensatedSum total;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto [atom, w] = atoms[i];
    if (!space.contains(atom)) {
      throw Error(ErrorKind::SpaceMismatch, "atom " + std::to_string(atom) + " outside the space");
    }
    if (i > 0 && atom <= atoms[i - 1].first) {
      throw Error(ErrorKind::InvalidArgument, "support atoms must be strictly ascending");
    }
    check_weight(w, atom);
    total += w;
    m.atoms_.push_back(atom);
    m.weights_.push_back(w);
  }
  if (std::fabs(total.value() - 1.0) > tol) {
    throw Error(ErrorKind::Normalization, "weights sum to " + format_double(total.value()) + ", not 1");
  }
  return m;
}

Measure Measure::countable(IndexFn weight, IndexFn tail_mass, double tol) {
  check_tol(tol);
  if (!weight || !tail_mass) {
    throw Error(ErrorKind::MissingTailBound, "countable measure needs a weight function and a tail-mass bound");
  }
  Measure m;
  m.space_ = AtomSpace::countable();
  m.tol_ = tol;
  m.density_ = std::make_shared<const Density>(Density{std::move(weight), std::move(tail_mass)});
  return m;
}

double Measure::weight(std::uint64_t atom) const {
  if (density_) {
    const double w = density_->weight(atom);
    check_weight(w, atom);
    return w;
  }
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
  if (it == atoms_.end() || *it != atom) return 0.0;
  return weights_[static_cast<std::size_t>(it - atoms_.begin())];
}

double Measure::tail_mass(std::uint64_t horizon) const {
  if (!density_) return 0.0;
  const double t = density_->tail(horizon);
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::TailBound, "tail-mass bound at " + std::to_string(horizon) + " is not a finite nonnegative number");
  }
  return t;
}

void Measure::check_horizon(std::uint64_t horizon, double partial_mass) const {
  if (!density_) return;
  if (partial_mass > 1.0 + tol_) {
    throw Error(ErrorKind::Normalization, "partial mass up to atom " + std::to_string(horizon) + " is " +
                                              format_double(partial_mass) + " > 1");
  }
  const double t = tail_mass(horizon);
  if (partial_mass + t < 1.0 - tol_) {
    throw Error(ErrorKind::TailBound, "tail-mass bound " + format_double(t) + " at " + std::to_string(horizon) +
                                          " does not cover the missing mass " + format_double(1.0 - partial_mass));
  }
  if (horizon > 0 && tail_mass(horizon / 2) < t) {
    throw Error(ErrorKind::TailBound, "tail-mass bound is not nonincreasing near " + std::to_string(horizon));
  }
}

}  // namespace uic
