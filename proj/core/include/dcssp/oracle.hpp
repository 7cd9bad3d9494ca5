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

#ifndef DCSSP_ORACLE_HPP_
#define DCSSP_ORACLE_HPP_

#include <optional>
#include <string_view>

#include "dcssp/instance.hpp"
#include "dcssp/structure.hpp"

namespace dcssp {

struct OracleLimits {
  // 0 selects 1 + (S - 1) * A, enough to hold a minimum-cost tree: nodes on
  // no loop's path can be removed without breaking any constraint.
  int max_nodes = 0;
  double time_budget_s = 60.0;
  // Without pruning every tree is visited and every placement is checked.
  bool prune = true;
};

enum class OracleStatus { kOptimal, kInfeasible, kBudgetExceeded };

std::string_view to_string(OracleStatus status);

struct OracleResult {
  OracleStatus status = OracleStatus::kInfeasible;
  std::optional<Solution> solution;
  std::optional<double> cost;
  long trees_enumerated = 0;    // distinct canonical trees within max_nodes
  long placements_checked = 0;  // complete placements run through the checker
};

// Exhaustive minimum-cost search over proper-hierarchy trees. Trees are
// built bottom-up as multisets of canonical subtrees, visited in ascending
// cost, and each is searched for a feasible loop placement.
OracleResult solve_exact(const ProblemInstance& inst,
                         const OracleLimits& limits = {});

}  // namespace dcssp

#endif  // DCSSP_ORACLE_HPP_
