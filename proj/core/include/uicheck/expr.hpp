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

#ifndef UICHECK_EXPR_HPP
#define UICHECK_EXPR_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace uic {

/// Minimal arithmetic language over one index variable `n`.
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := unary ('^' factor)?          right-associative
///   unary  := '-' unary | atom
///   atom   := literal | 'n' | func '(' expr (',' expr)? ')' | '(' expr ')'
///
/// Functions: ln, exp, floor, abs (one argument), min, max (two arguments).
/// Note that unary minus binds tighter than '^', so "-2^2" is 4.
class ModelExpr {
 public:
  enum class Op { Literal, Index, Neg, Add, Sub, Mul, Div, Pow, Call };
  enum class Func { Ln, Exp, Min, Max, Floor, Abs };

  struct Node {
    Op op;
    double value = 0.0;  // Literal only
    Func func = Func::Ln;  // Call only
    std::vector<std::shared_ptr<const Node>> args;
  };

  static ModelExpr parse(std::string_view text);
  static ModelExpr literal(double v);

  /// Evaluates at index n in parse-tree order. Throws Error with kind Domain,
  /// DivByZero or Overflow.
  double operator()(std::uint64_t n) const;

  /// Canonical, fully parenthesised form; parse(to_string()) yields an
  /// identical tree.
  std::string to_string() const;

  const Node& root() const { return *root_; }

  friend bool operator==(const ModelExpr& a, const ModelExpr& b);

 private:
  explicit ModelExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

bool operator==(const ModelExpr::Node& a, const ModelExpr::Node& b);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

}  // namespace uic

#endif  // UICHECK_EXPR_HPP
