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

#include "uicheck/random_variable.hpp"

#include <cmath>
#include <string>

#include "uicheck/errors.hpp"

namespace uic {

RandomVariable RandomVariable::finite(std::vector<double> values) {
  auto impl = std::make_shared<Impl>();
  impl->space = AtomSpace::finite(values.size());
  bool integral = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorKind::InvalidArgument, "value at atom " + std::to_string(i) + " is not finite");
    }
    integral = integral && std::floor(values[i]) == values[i];
  }
  impl->values = std::move(values);
  impl->integer_valued = integral;
  return RandomVariable(std::move(impl));
}

RandomVariable RandomVariable::countable(IndexFn values, IndexFn growth, std::optional<IndexFn> product_tail,
                                         bool integer_valued) {
  if (!values || !growth) {
    throw Error(ErrorKind::InvalidArgument, "countable random variable needs a value function and a growth bound");
  }
  auto impl = std::make_shared<Impl>();
  impl->space = AtomSpace::countable();
  impl->fn = std::move(values);
  impl->growth = std::move(growth);
  if (product_tail && *product_tail) impl->product_tail = std::move(product_tail);
  impl->integer_valued = integer_valued;
  return RandomVariable(std::move(impl));
}

RandomVariable RandomVariable::constant(AtomSpace space, double c) {
  if (space.is_finite()) return finite(std::vector<double>(space.size(), c));
  const double g = std::fabs(c);
  return countable([c](std::uint64_t) { return c; }, [g](std::uint64_t) { return g; }, std::nullopt,
                   std::floor(c) == c);
}

double RandomVariable::operator()(std::uint64_t atom) const {
  if (impl_->space.is_finite()) {
    if (atom >= impl_->values.size()) {
      throw Error(ErrorKind::SpaceMismatch, "atom " + std::to_string(atom) + " outside the space");
    }
    return impl_->values[atom];
  }
  const double v = impl_->fn(atom);
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::InvalidArgument, "value at atom " + std::to_string(atom) + " is not finite");
  }
  return v;
}

double RandomVariable::growth(std::uint64_t atom) const {
  if (impl_->space.is_finite()) return std::fabs((*this)(atom));
  return impl_->growth(atom);
}

double RandomVariable::product_tail(std::uint64_t horizon) const {
  if (!impl_->product_tail) {
    throw Error(ErrorKind::MissingTailBound, "random variable declares no product tail bound");
  }
  const double b = (*impl_->product_tail)(horizon);
  if (!(b >= 0.0) || !std::isfinite(b)) {
    throw Error(ErrorKind::TailBound, "product tail bound at " + std::to_string(horizon) + " is not a finite nonnegative number");
  }
  return b;
}

std::optional<double> RandomVariable::max_abs() const {
  if (!impl_->space.is_finite()) return std::nullopt;
  double m = 0.0;
  for (double v : impl_->values) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace uic
