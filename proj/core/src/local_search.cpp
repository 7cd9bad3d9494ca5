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

#include "dcssp/local_search.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <stdexcept>

namespace dcssp {

namespace {

struct Override {
  int node;
  int type;
};

// Re-checks only what a same-mode type change can affect: C1 to C4 at the
// changed nodes and C5/C6 for loops whose path crosses them. Mode-dependent
// constraints (C7, C9) and the shape (C8) cannot change under such moves.
class TypeChangeEvaluator {
 public:
  TypeChangeEvaluator(const Solution& sol, const ProblemInstance& inst)
      : sol_(sol),
        inst_(inst),
        signals_(sol.nodes.size(), 0),
        memory_(sol.nodes.size(), 0.0),
        instructions_(sol.nodes.size(), 0),
        through_(sol.nodes.size()) {
    for (const LoopPlacement& p : sol.placements) {
      const ControlLoop& loop = inst.loop(p.loop);
      signals_[p.connect_leaf] += loop.signals;
      memory_[p.process_node] += loop.mem_demand;
      instructions_[p.process_node] += loop.instr_count;
      int v = p.connect_leaf;
      while (true) {
        through_[v].push_back(p.loop);
        if (v == p.process_node) break;
        v = *sol.nodes[v].parent;
      }
    }
  }

  bool feasible(std::span<const Override> changes) const {
    for (const Override& c : changes) {
      const Node& n = sol_.nodes[c.node];
      const DeviceType& d = inst_.device(c.type);
      if (n.is_leaf() && signals_[c.node] > d.channels) return false;
      if (static_cast<int>(n.children.size()) > d.max_children) return false;
      if (d.is_processor()) {
        if (memory_[c.node] > d.memory) return false;
        if (d.instr_time * static_cast<double>(instructions_[c.node]) >
            inst_.limits.max_cycle_time)
          return false;
      }
    }
    for (const Override& c : changes)
      for (int loop : through_[c.node])
        if (!path_ok(sol_.placements[loop - 1], changes)) return false;
    return true;
  }

 private:
  int type_at(int v, std::span<const Override> changes) const {
    for (const Override& c : changes)
      if (c.node == v) return c.type;
    return sol_.nodes[v].type;
  }

  // Same arithmetic order as check_feasibility so both agree bit for bit.
  bool path_ok(const LoopPlacement& p,
               std::span<const Override> changes) const {
    double survival = 1.0;
    double delay = 0.0;
    int v = p.connect_leaf;
    while (true) {
      const DeviceType& d = inst_.device(type_at(v, changes));
      survival = path::survival_step(survival, d);
      if (v == p.process_node) break;
      delay += d.relay_delay;
      v = *sol_.nodes[v].parent;
    }
    return survival >= inst_.limits.min_loop_reliability &&
           delay <= inst_.limits.max_loop_delay;
  }

  const Solution& sol_;
  const ProblemInstance& inst_;
  std::vector<long> signals_;
  std::vector<double> memory_;
  std::vector<long> instructions_;
  std::vector<std::vector<int>> through_;
};

// Same-mode types strictly cheaper than `type`, cheapest first.
std::vector<int> cheaper_types(const ProblemInstance& inst, int type) {
  const DeviceType& cur = inst.device(type);
  std::vector<int> out;
  for (const DeviceType& d : inst.devices)
    if (d.mode == cur.mode && d.cost < cur.cost) out.push_back(d.id);
  std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
    return inst.device(a).cost < inst.device(b).cost;
  });
  return out;
}

}  // namespace

Solution improve(const Solution& sol, const ProblemInstance& inst,
                 long move_budget, ImproveStats* stats) {
  if (!check_feasibility(sol, inst).feasible())
    throw Error("local search requires a feasible solution");

  ImproveStats local;
  ImproveStats& st = stats ? *stats : local;
  st = {};
  Solution cur = sol;
  long budget = move_budget;
  const int count = static_cast<int>(cur.nodes.size());

  std::vector<std::vector<int>> cheaper(inst.num_types() + 1);
  for (int t = 1; t <= inst.num_types(); ++t) cheaper[t] = cheaper_types(inst, t);

  auto spend = [&]() {
    if (budget <= 0) return false;
    --budget;
    ++st.moves_evaluated;
    return true;
  };

  // Loads and paths depend only on placements, which never change here;
  // the evaluator reads node types from `cur` as they are updated.
  const TypeChangeEvaluator eval(cur, inst);

  bool progress = true;
  while (progress && budget > 0) {
    progress = false;

    // Single-node replacements, first improvement in node-id order.
    for (int v = 0; v < count && budget > 0; ++v) {
      for (int t : cheaper[cur.nodes[v].type]) {
        if (!spend()) break;
        const std::array<Override, 1> change{{{v, t}}};
        if (eval.feasible(change)) {
          cur.nodes[v].type = t;
          ++st.replacements;
          progress = true;
          break;
        }
      }
    }
    if (progress) continue;

    // Swap two same-mode nodes of different types, then downgrade one of them.
    bool swapped = false;
    for (int u = 0; u < count && !swapped && budget > 0; ++u) {
      for (int v = u + 1; v < count && !swapped && budget > 0; ++v) {
        const int tu = cur.nodes[u].type;
        const int tv = cur.nodes[v].type;
        if (tu == tv || inst.device(tu).mode != inst.device(tv).mode) continue;
        // After the swap u holds tv and v holds tu.
        if (cheaper[tv].empty() && cheaper[tu].empty()) continue;
        if (!spend()) break;
        const std::array<Override, 2> swap{{{u, tv}, {v, tu}}};
        if (!eval.feasible(swap)) continue;
        auto try_downgrade = [&](int node, int held, int other_node,
                                 int other_held) {
          for (int t : cheaper[held]) {
            if (!spend()) return false;
            const std::array<Override, 2> change{
                {{node, t}, {other_node, other_held}}};
            if (eval.feasible(change)) {
              cur.nodes[node].type = t;
              cur.nodes[other_node].type = other_held;
              return true;
            }
          }
          return false;
        };
        if (try_downgrade(u, tv, v, tu) || try_downgrade(v, tu, u, tv)) {
          ++st.swap_enabled;
          swapped = true;
        }
      }
    }
    progress = swapped;
  }

  if (!check_feasibility(cur, inst).feasible())
    throw std::logic_error("local search produced an infeasible solution");
  return cur;
}

}  // namespace dcssp
