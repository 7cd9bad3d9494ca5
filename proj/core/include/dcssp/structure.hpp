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

#ifndef DCSSP_STRUCTURE_HPP_
#define DCSSP_STRUCTURE_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcssp/errors.hpp"
#include "dcssp/instance.hpp"

namespace dcssp {

// A device instance in the hierarchy. Node ids are dense, 0-based, and equal
// the node's index in Solution::nodes.
struct Node {
  int id = 0;
  int level = 1;  // 1 = root level, S = leaf level
  int type = 0;   // DeviceType id
  std::optional<int> parent;
  std::vector<int> children;

  bool is_leaf() const { return children.empty(); }

  friend bool operator==(const Node&, const Node&) = default;
};

// Loop `loop` is wired to `connect_leaf` and executed on `process_node`,
// which must be the leaf itself or one of its ancestors.
struct LoopPlacement {
  int loop = 0;
  int connect_leaf = 0;
  int process_node = 0;

  friend bool operator==(const LoopPlacement&, const LoopPlacement&) = default;
};

struct Solution {
  std::vector<Node> nodes;
  // One entry per loop; placements[j] belongs to loop j + 1.
  std::vector<LoopPlacement> placements;

  int root() const;

  friend bool operator==(const Solution&, const Solution&) = default;
};

// Raised for solutions that are not a tree at all: cycles, several roots,
// dangling ids, inconsistent parent/child links, missing placements.
class MalformedSolution : public Error {
 public:
  using Error::Error;
};

enum class Constraint {
  kChannels = 1,     // C1
  kFanOut,           // C2
  kMemory,           // C3
  kCycleTime,        // C4
  kReliability,      // C5
  kDelay,            // C6
  kProcessorOnly,    // C7
  kProperHierarchy,  // C8
  kModeMonotone,     // C9
};

std::string_view constraint_id(Constraint c);  // "C1" .. "C9"

struct Violation {
  Constraint constraint;
  enum class Subject { kNode, kLoop } subject;
  int subject_id;
  double measured;
  double limit;
};

struct FeasibilityReport {
  std::vector<Violation> violations;

  bool feasible() const { return violations.empty(); }
  bool has(Constraint c) const;
};

// Throws MalformedSolution when the solution is not a well-formed tree with
// exactly one valid placement per loop, or references unknown device types.
void check_structure(const Solution& sol, const ProblemInstance& inst);

double total_cost(const Solution& sol, const ProblemInstance& inst);

FeasibilityReport check_feasibility(const Solution& sol,
                                    const ProblemInstance& inst);

// Survival probability of the path connect_leaf -> process_node, inclusive.
double path_reliability(const Solution& sol, const ProblemInstance& inst,
                        int loop_id);

// Forwarding delay along connect_leaf -> process_node, excluding the
// processing node itself.
double path_delay(const Solution& sol, const ProblemInstance& inst,
                  int loop_id);

// Order-invariant encoding of the labeled tree (types, and per-node sets of
// connected and processed loop ids when placements are present).
std::string canonical_signature(const Solution& sol);

std::string to_dot(const Solution& sol, const ProblemInstance& inst);

std::string serialize_solution(const Solution& sol);

// Throws SyntaxError / SchemaError / MalformedSolution.
Solution parse_solution(std::string_view text);

// Helpers shared by the search code.
namespace path {

// Product of (1 - P) over device types, multiplied leaf-first.
inline double survival_step(double acc, const DeviceType& d) {
  return acc * (1.0 - d.fail_prob);
}

}  // namespace path

}  // namespace dcssp

#endif  // DCSSP_STRUCTURE_HPP_
