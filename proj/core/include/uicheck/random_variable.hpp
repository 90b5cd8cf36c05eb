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

#ifndef UICHECK_RANDOM_VARIABLE_HPP
#define UICHECK_RANDOM_VARIABLE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "uicheck/measure.hpp"

namespace uic {

/// A real function on the atoms of a space.
///
/// Countable variables carry a growth bound G with |X(i)| <= G(i) and,
/// optionally, a product tail bound B(M) >= sum_{i>M} G(i) p(i) declared
/// against the measures the variable is evaluated under. Without B,
/// expectations of unbounded integrands under countable densities fail with
/// MissingTailBound.
class RandomVariable {
 public:
  static RandomVariable finite(std::vector<double> values);
  static RandomVariable countable(IndexFn values, IndexFn growth,
                                  std::optional<IndexFn> product_tail = std::nullopt,
                                  bool integer_valued = false);
  static RandomVariable constant(AtomSpace space, double c);

  const AtomSpace& space() const { return impl_->space; }
  double operator()(std::uint64_t atom) const;
  double growth(std::uint64_t atom) const;
  bool has_product_tail() const { return impl_->product_tail.has_value(); }
  double product_tail(std::uint64_t horizon) const;

  /// Values on a finite space.
  std::span<const double> values() const { return impl_->values; }
  /// max |X| over all atoms of a finite space.
  std::optional<double> max_abs() const;
  bool integer_valued() const { return impl_->integer_valued; }

  /// True when both handles refer to the same underlying definition.
  bool same_as(const RandomVariable& other) const { return impl_ == other.impl_; }

 private:
  struct Impl {
    AtomSpace space = AtomSpace::countable();
    std::vector<double> values;
    IndexFn fn;
    IndexFn growth;
    std::optional<IndexFn> product_tail;
    bool integer_valued = false;
  };
  explicit RandomVariable(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace uic

#endif  // UICHECK_RANDOM_VARIABLE_HPP
