// Copyright 2026 The dcssp Authors
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

#include "dcssp/schedule.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "dcssp/text.hpp"

namespace dcssp {

namespace {

using Node = ScheduleExpr::Node;
using Kind = ScheduleExpr::Kind;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_literal(double v) {
  return std::make_shared<const Node>(Node{Kind::kLiteral, v, nullptr, nullptr});
}

NodePtr make_binary(Kind k, NodePtr lhs, NodePtr rhs) {
  return std::make_shared<const Node>(
      Node{k, 0.0, std::move(lhs), std::move(rhs)});
}

// Recursive descent over
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := number ['n'] | '-' number ['n'] | 'n' | '(' expr ')'
// A literal immediately followed by `n` is an implicit product.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail_unexpected();
    return e;
  }

 private:
  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      skip_space();
      if (peek() == '+' || peek() == '-') {
        const Kind k = peek() == '+' ? Kind::kAdd : Kind::kSub;
        ++pos_;
        lhs = make_binary(k, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      skip_space();
      if (peek() == '*' || peek() == '/') {
        const Kind k = peek() == '*' ? Kind::kMul : Kind::kDiv;
        ++pos_;
        lhs = make_binary(k, std::move(lhs), factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      skip_space();
      if (peek() != ')') {
        if (pos_ == text_.size())
          throw ScheduleSyntaxError("missing ')'", pos_);
        fail_unexpected();
      }
      ++pos_;
      return inner;
    }
    if (c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
      NodePtr lit = number();
      skip_space();
      if (identifier_ahead()) {
        const std::size_t at = pos_;
        if (identifier() != "n") unknown_identifier(at);
        return make_binary(Kind::kMul, std::move(lit),
                           std::make_shared<const Node>(
                               Node{Kind::kVariable, 0.0, nullptr, nullptr}));
      }
      return lit;
    }
    if (identifier_ahead()) {
      const std::size_t at = pos_;
      if (identifier() != "n") unknown_identifier(at);
      return std::make_shared<const Node>(
          Node{Kind::kVariable, 0.0, nullptr, nullptr});
    }
    if (pos_ == text_.size())
      throw ScheduleSyntaxError("unexpected end of expression", pos_);
    fail_unexpected();
  }

  NodePtr number() {
    const std::size_t start = pos_;
    if (peek() == '-') {
      ++pos_;
      if (!(std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.'))
        throw ScheduleSyntaxError("unary minus applies to literals only",
                                  start);
    }
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')
      ++pos_;
    // Exponent only when digits follow, so "2e" is not half a literal.
    if (peek() == 'e' || peek() == 'E') {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
      throw ScheduleSyntaxError("malformed number '" +
                                    std::string(text_.substr(start, pos_ - start)) +
                                    "'",
                                start);
    return make_literal(value);
  }

  bool identifier_ahead() const {
    const char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string_view identifier() {
    const std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  [[noreturn]] void unknown_identifier(std::size_t at) {
    std::size_t end = at;
    while (end < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[end])) ||
            text_[end] == '_'))
      ++end;
    throw ScheduleSyntaxError(
        "unknown identifier '" + std::string(text_.substr(at, end - at)) + "'",
        at);
  }

  [[noreturn]] void fail_unexpected() {
    throw ScheduleSyntaxError(
        std::string("unexpected '") + text_[pos_] + "'", pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double eval_node(const Node& node, double n) {
  switch (node.kind) {
    case Kind::kLiteral:
      return node.value;
    case Kind::kVariable:
      return n;
    case Kind::kAdd:
      return eval_node(*node.lhs, n) + eval_node(*node.rhs, n);
    case Kind::kSub:
      return eval_node(*node.lhs, n) - eval_node(*node.rhs, n);
    case Kind::kMul:
      return eval_node(*node.lhs, n) * eval_node(*node.rhs, n);
    case Kind::kDiv: {
      const double denom = eval_node(*node.rhs, n);
      if (denom == 0.0) throw ScheduleEvalError("division by zero");
      return eval_node(*node.lhs, n) / denom;
    }
  }
  return 0.0;
}

int precedence(Kind k) {
  switch (k) {
    case Kind::kAdd:
    case Kind::kSub:
      return 1;
    case Kind::kMul:
    case Kind::kDiv:
      return 2;
    default:
      return 3;
  }
}

std::string print(const Node& node, int parent_prec, bool right_operand) {
  if (node.kind == Kind::kLiteral) return format_number(node.value);
  if (node.kind == Kind::kVariable) return "n";
  const int prec = precedence(node.kind);
  static constexpr const char* kOps[] = {"", "", " + ", " - ", "*", "/"};
  std::string s = print(*node.lhs, prec, false) +
                  kOps[static_cast<int>(node.kind)] +
                  print(*node.rhs, prec, true);
  if (prec < parent_prec || (prec == parent_prec && right_operand))
    return "(" + s + ")";
  return s;
}

bool same_tree(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Kind::kLiteral) return a.value == b.value;
  if (a.kind == Kind::kVariable) return true;
  return same_tree(*a.lhs, *b.lhs) && same_tree(*a.rhs, *b.rhs);
}

bool mentions_n(const Node& node) {
  if (node.kind == Kind::kVariable) return true;
  if (node.kind == Kind::kLiteral) return false;
  return mentions_n(*node.lhs) || mentions_n(*node.rhs);
}

}  // namespace

ScheduleExpr ScheduleExpr::constant(double value) {
  return ScheduleExpr(make_literal(value));
}

ScheduleExpr ScheduleExpr::parse(std::string_view text) {
  return ScheduleExpr(Parser(text).parse());
}

double ScheduleExpr::eval(double n) const {
  const double v = eval_node(*root_, n);
  if (!std::isfinite(v)) throw ScheduleEvalError("non-finite result");
  return v;
}

bool ScheduleExpr::is_constant() const { return !mentions_n(*root_); }

std::string ScheduleExpr::to_string() const { return print(*root_, 0, false); }

bool operator==(const ScheduleExpr& a, const ScheduleExpr& b) {
  return same_tree(*a.root_, *b.root_);
}

double eval_schedule(const ScheduleExpr& expr, long n) {
  if (n < 1)
    throw ScheduleEvalError("iteration numbers start at 1, got " +
                            std::to_string(n));
  return expr.eval(static_cast<double>(n));
}

std::string_view to_string(ScheduleRole role) {
  switch (role) {
    case ScheduleRole::kAlpha:
      return "alpha";
    case ScheduleRole::kBeta:
      return "beta";
    case ScheduleRole::kRho:
      return "rho";
  }
  return "?";
}

std::vector<RangeViolation> validate_schedule_range(const ScheduleExpr& expr,
                                                    long n_max,
                                                    ScheduleRole role) {
  if (n_max < 1) throw Error("n_max must be at least 1");
  std::vector<RangeViolation> out;
  const std::string name(to_string(role));
  for (long n = 1; n <= n_max; ++n) {
    const std::string at = " at n=" + std::to_string(n);
    double v = 0.0;
    try {
      v = eval_schedule(expr, n);
    } catch (const ScheduleEvalError& e) {
      out.push_back({n, std::nan(""), name + " " + e.what() + at});
      continue;
    }
    if (role == ScheduleRole::kRho) {
      if (v < 0.0 || v > 1.0)
        out.push_back({n, v, name + " out of [0,1]" + at});
    } else if (v < 0.0) {
      out.push_back({n, v, name + " negative" + at});
    }
  }
  return out;
}

}  // namespace dcssp
