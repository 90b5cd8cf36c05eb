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

#include "uicheck/expr.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <system_error>

#include "uicheck/errors.hpp"

namespace uic {

namespace {

using Node = ModelExpr::Node;
using NodePtr = std::shared_ptr<const Node>;
using Op = ModelExpr::Op;
using Func = ModelExpr::Func;

struct FuncInfo {
  std::string_view name;
  Func func;
  int arity;
};

constexpr std::array<FuncInfo, 6> kFunctions{{
    {"ln", Func::Ln, 1},
    {"exp", Func::Exp, 1},
    {"min", Func::Min, 2},
    {"max", Func::Max, 2},
    {"floor", Func::Floor, 1},
    {"abs", Func::Abs, 1},
}};

const FuncInfo& info(Func f) {
  for (const auto& fi : kFunctions) {
    if (fi.func == f) return fi;
  }
  return kFunctions[0];
}

NodePtr make(Op op, std::vector<NodePtr> args = {}) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->args = std::move(args);
  return node;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail(ErrorKind::Syntax, "empty expression");
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(ErrorKind::Syntax, "unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(ErrorKind kind, const std::string& msg) const {
    throw LocatedError(kind, "offset " + std::to_string(pos_), msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(ErrorKind::Syntax, std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Op::Add, {lhs, term()});
      } else if (accept('-')) {
        lhs = make(Op::Sub, {lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make(Op::Mul, {lhs, factor()});
      } else if (accept('/')) {
        lhs = make(Op::Div, {lhs, factor()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    NodePtr base = unary();
    if (accept('^')) return make(Op::Pow, {base, factor()});
    return base;
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Neg, {unary()});
    return atom();
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail(ErrorKind::Syntax, "unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(ErrorKind::Syntax, std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      const std::size_t exp_start = pos_;
      digits();
      if (pos_ == exp_start) pos_ = save;  // not an exponent after all
    }
    double v = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range) {
      pos_ = start;
      fail(ErrorKind::Overflow, "literal out of range");
    }
    if (ec != std::errc() || ptr != last) {
      pos_ = start;
      fail(ErrorKind::Syntax, "malformed number");
    }
    auto node = std::make_shared<Node>();
    node->op = Op::Literal;
    node->value = v;
    return node;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "n") return make(Op::Index);

    const FuncInfo* fi = nullptr;
    for (const auto& candidate : kFunctions) {
      if (candidate.name == name) fi = &candidate;
    }
    if (fi == nullptr) {
      std::size_t next = pos_;
      while (next < text_.size() && std::isspace(static_cast<unsigned char>(text_[next]))) ++next;
      const bool called = next < text_.size() && text_[next] == '(';
      pos_ = start;
      if (!called) fail(ErrorKind::Syntax, "unknown variable '" + std::string(name) + "', the index is 'n'");
      fail(ErrorKind::UnknownFunction, "unknown function '" + std::string(name) + "'");
    }
    expect('(');
    std::vector<NodePtr> args{expr()};
    while (accept(',')) args.push_back(expr());
    expect(')');
    if (static_cast<int>(args.size()) != fi->arity) {
      pos_ = start;
      fail(ErrorKind::Arity, std::string(fi->name) + " takes " + std::to_string(fi->arity) +
                                 " argument(s), got " + std::to_string(args.size()));
    }
    auto node = std::make_shared<Node>();
    node->op = Op::Call;
    node->func = fi->func;
    node->args = std::move(args);
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double checked(double v, const char* what) {
  if (std::isnan(v)) throw Error(ErrorKind::Domain, std::string("non-real result in ") + what);
  if (!std::isfinite(v)) throw Error(ErrorKind::Overflow, std::string("overflow in ") + what);
  return v;
}

double eval(const Node& node, double n) {
  switch (node.op) {
    case Op::Literal: return node.value;
    case Op::Index: return n;
    case Op::Neg: return -eval(*node.args[0], n);
    case Op::Add: return checked(eval(*node.args[0], n) + eval(*node.args[1], n), "+");
    case Op::Sub: return checked(eval(*node.args[0], n) - eval(*node.args[1], n), "-");
    case Op::Mul: return checked(eval(*node.args[0], n) * eval(*node.args[1], n), "*");
    case Op::Div: {
      const double num = eval(*node.args[0], n);
      const double den = eval(*node.args[1], n);
      if (den == 0.0) throw Error(ErrorKind::DivByZero, "division by zero");
      return checked(num / den, "/");
    }
    case Op::Pow: {
      const double base = eval(*node.args[0], n);
      const double ex = eval(*node.args[1], n);
      if (base == 0.0 && ex < 0.0) throw Error(ErrorKind::DivByZero, "zero raised to a negative power");
      return checked(std::pow(base, ex), "^");
    }
    case Op::Call: {
      const double a = eval(*node.args[0], n);
      switch (node.func) {
        case Func::Ln:
          if (a <= 0.0) throw Error(ErrorKind::Domain, "ln of a nonpositive value");
          return std::log(a);
        case Func::Exp: return checked(std::exp(a), "exp");
        case Func::Floor: return std::floor(a);
        case Func::Abs: return std::fabs(a);
        case Func::Min: return std::min(a, eval(*node.args[1], n));
        case Func::Max: return std::max(a, eval(*node.args[1], n));
      }
    }
  }
  return 0.0;
}

void print(const Node& node, std::string& out) {
  switch (node.op) {
    case Op::Literal: out += format_double(node.value); return;
    case Op::Index: out += 'n'; return;
    case Op::Neg:
      out += "(-";
      print(*node.args[0], out);
      out += ')';
      return;
    case Op::Call: {
      out += info(node.func).name;
      out += '(';
      for (std::size_t i = 0; i < node.args.size(); ++i) {
        if (i) out += ',';
        print(*node.args[i], out);
      }
      out += ')';
      return;
    }
    default: break;
  }
  char sym = '+';
  switch (node.op) {
    case Op::Sub: sym = '-'; break;
    case Op::Mul: sym = '*'; break;
    case Op::Div: sym = '/'; break;
    case Op::Pow: sym = '^'; break;
    default: break;
  }
  out += '(';
  print(*node.args[0], out);
  out += sym;
  print(*node.args[1], out);
  out += ')';
}

}  // namespace

ModelExpr ModelExpr::parse(std::string_view text) { return ModelExpr(Parser(text).parse()); }

ModelExpr ModelExpr::literal(double v) {
  auto node = std::make_shared<Node>();
  node->op = Op::Literal;
  node->value = v;
  return ModelExpr(std::move(node));
}

double ModelExpr::operator()(std::uint64_t n) const {
  return eval(*root_, static_cast<double>(n));
}

std::string ModelExpr::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

bool operator==(const ModelExpr::Node& a, const ModelExpr::Node& b) {
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  if (a.op == Op::Literal && a.value != b.value) return false;
  if (a.op == Op::Call && a.func != b.func) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!(*a.args[i] == *b.args[i])) return false;
  }
  return true;
}

bool operator==(const ModelExpr& a, const ModelExpr& b) { return *a.root_ == *b.root_; }

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace uic
