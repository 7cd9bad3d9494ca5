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

#ifndef DCSSP_SCHEDULE_HPP_
#define DCSSP_SCHEDULE_HPP_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dcssp/errors.hpp"

namespace dcssp {

// Raised for malformed schedule text. `position` is the 0-based offset of the
// offending character.
class ScheduleSyntaxError : public Error {
 public:
  ScheduleSyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Division by zero or a non-finite result during evaluation.
class ScheduleEvalError : public Error {
 public:
  using Error::Error;
};

// An arithmetic expression in the iteration number n: numeric literals, the
// variable `n`, + - * / and parentheses. Immutable and cheap to copy.
class ScheduleExpr {
 public:
  enum class Kind { kLiteral, kVariable, kAdd, kSub, kMul, kDiv };

  struct Node {
    Kind kind;
    double value = 0.0;  // kLiteral only
    std::shared_ptr<const Node> lhs, rhs;
  };

  static ScheduleExpr constant(double value);
  static ScheduleExpr parse(std::string_view text);

  double eval(double n) const;

  // True when the expression does not mention `n`.
  bool is_constant() const;

  // Canonical text; parsing it yields a structurally equal expression.
  std::string to_string() const;

  const Node& root() const { return *root_; }

  friend bool operator==(const ScheduleExpr& a, const ScheduleExpr& b);

 private:
  explicit ScheduleExpr(std::shared_ptr<const Node> root)
      : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

inline ScheduleExpr parse_schedule(std::string_view text) {
  return ScheduleExpr::parse(text);
}

// Evaluates at iteration n ≥ 1; throws ScheduleEvalError otherwise.
double eval_schedule(const ScheduleExpr& expr, long n);

enum class ScheduleRole { kAlpha, kBeta, kRho };

std::string_view to_string(ScheduleRole role);

struct RangeViolation {
  long n;
  double value;
  std::string message;  // e.g. "rho out of [0,1] at n=2"
};

// Evaluates at every n in 1..n_max and reports values outside the role's
// domain: alpha, beta ≥ 0; rho in [0,1]; always finite.
std::vector<RangeViolation> validate_schedule_range(const ScheduleExpr& expr,
                                                    long n_max,
                                                    ScheduleRole role);

}  // namespace dcssp

#endif  // DCSSP_SCHEDULE_HPP_
