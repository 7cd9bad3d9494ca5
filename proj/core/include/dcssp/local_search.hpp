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

#ifndef DCSSP_LOCAL_SEARCH_HPP_
#define DCSSP_LOCAL_SEARCH_HPP_

#include "dcssp/instance.hpp"
#include "dcssp/structure.hpp"

namespace dcssp {

struct ImproveStats {
  long moves_evaluated = 0;
  int replacements = 0;   // accepted single-node type replacements
  int swap_enabled = 0;   // accepted swap + replacement composites
};

// Type-exchange descent on a feasible solution. Tree shape and loop
// placements are kept; only node types change.
//
//   replacement: give one node a cheaper type of the same mode;
//   swap: exchange the types of two same-mode nodes with different types,
//         accepted only when it lets one of the two nodes take a cheaper
//         type in the same step.
//
// Scans nodes in id order with first improvement and repeats full passes
// until nothing is accepted. Each feasibility evaluation consumes one unit
// of `move_budget`. Throws Error on infeasible input.
Solution improve(const Solution& sol, const ProblemInstance& inst,
                 long move_budget, ImproveStats* stats = nullptr);

}  // namespace dcssp

#endif  // DCSSP_LOCAL_SEARCH_HPP_
