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

#include "dcssp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <numeric>
#include <unordered_set>

namespace dcssp {

std::string_view to_string(OracleStatus status) {
  switch (status) {
    case OracleStatus::kOptimal:
      return "optimal";
    case OracleStatus::kInfeasible:
      return "infeasible";
    case OracleStatus::kBudgetExceeded:
      return "budget exceeded";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct OutOfTime {};

class Deadline {
 public:
  explicit Deadline(double seconds)
      : end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(seconds))) {}

  void tick() {
    if (++ticks_ % 1024 == 0 && Clock::now() > end_) throw OutOfTime{};
  }

 private:
  Clock::time_point end_;
  unsigned long ticks_ = 0;
};

// A canonical subtree rooted at some level. Children refer to the catalog
// of the next level and are stored in non-decreasing index order, so each
// multiset of child subtrees appears exactly once.
struct Shape {
  int type;
  std::vector<int> kids;
  int size;
  std::vector<int> type_counts;
  std::string signature;  // same encoding as canonical_signature()
};

using Catalog = std::vector<std::vector<Shape>>;  // indexed by level

Catalog build_catalog(const ProblemInstance& inst, int max_nodes,
                      Deadline& deadline) {
  const int levels = inst.levels();
  Catalog catalog(levels + 1);
  for (const DeviceType& d : inst.devices) {
    if (levels == 1 && !d.is_processor()) continue;
    std::vector<int> counts(inst.num_types() + 1, 0);
    counts[d.id] = 1;
    catalog[levels].push_back(Shape{d.id, {}, 1, std::move(counts),
                                    "(" + std::to_string(d.id) + ")"});
  }

  for (int level = levels - 1; level >= 1; --level) {
    const int cap = max_nodes - (level - 1);
    const auto& below = catalog[level + 1];
    auto& here = catalog[level];
    std::unordered_set<std::string> seen;
    for (const DeviceType& d : inst.devices) {
      if (level == 1 && !d.is_processor()) continue;
      if (d.max_children < 1) continue;
      std::vector<int> allowed;
      for (int i = 0; i < static_cast<int>(below.size()); ++i)
        if (d.is_processor() || !inst.device(below[i].type).is_processor())
          allowed.push_back(i);

      std::vector<int> picked;
      auto expand = [&](auto&& self, std::size_t start, int size) -> void {
        for (std::size_t a = start; a < allowed.size(); ++a) {
          const Shape& child = below[allowed[a]];
          if (size + child.size > cap) continue;
          deadline.tick();
          picked.push_back(allowed[a]);
          std::vector<std::string> sigs;
          sigs.reserve(picked.size());
          for (int k : picked) sigs.push_back(below[k].signature);
          std::sort(sigs.begin(), sigs.end());
          std::string sig = "(" + std::to_string(d.id);
          for (const auto& s : sigs) sig += s;
          sig += ")";
          if (seen.insert(sig).second) {
            std::vector<int> counts(inst.num_types() + 1, 0);
            counts[d.id] = 1;
            for (int k : picked)
              for (std::size_t t = 0; t < counts.size(); ++t)
                counts[t] += below[k].type_counts[t];
            here.push_back(Shape{d.id, picked, size + child.size,
                                 std::move(counts),
                                 std::move(sig)});
          }
          if (static_cast<int>(picked.size()) < d.max_children)
            self(self, a, size + child.size);
          picked.pop_back();
        }
      };
      expand(expand, 0, 1);
    }
  }
  return catalog;
}

Solution materialize(const Catalog& catalog, int root_index) {
  Solution sol;
  struct Pending {
    int level;
    int shape;
    std::optional<int> parent;
  };
  std::deque<Pending> queue{{1, root_index, std::nullopt}};
  while (!queue.empty()) {
    const Pending p = queue.front();
    queue.pop_front();
    const Shape& s = catalog[p.level][p.shape];
    const int id = static_cast<int>(sol.nodes.size());
    sol.nodes.push_back(Node{id, p.level, s.type, p.parent, {}});
    if (p.parent) sol.nodes[*p.parent].children.push_back(id);
    for (int k : s.kids) queue.push_back({p.level + 1, k, id});
  }
  return sol;
}

// Depth-first loop placement with constraint propagation: a loop only goes
// to a leaf with enough free channels and to a processor on its path whose
// memory, cycle time, reliability and delay still hold.
class PlacementSearch {
 public:
  PlacementSearch(const ProblemInstance& inst, Solution& sol, bool first_only,
                  Deadline& deadline, long& checked)
      : inst_(inst),
        sol_(sol),
        first_only_(first_only),
        deadline_(deadline),
        checked_(checked),
        channels_left_(sol.nodes.size(), 0),
        memory_used_(sol.nodes.size(), 0.0),
        instr_used_(sol.nodes.size(), 0) {
    for (const Node& n : sol.nodes)
      if (n.is_leaf()) {
        leaves_.push_back(n.id);
        channels_left_[n.id] = inst.device(n.type).channels;
      }
    order_.resize(inst.num_loops());
    std::iota(order_.begin(), order_.end(), 1);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return inst.loop(a).signals > inst.loop(b).signals;
    });
    sol_.placements.assign(inst.num_loops(), LoopPlacement{});
  }

  // Returns a feasible placement set, left in sol_.placements.
  bool run() {
    found_ = false;
    descend(0);
    if (found_) sol_.placements = best_;
    return found_;
  }

 private:
  bool descend(std::size_t depth) {
    deadline_.tick();
    if (depth == order_.size()) {
      ++checked_;
      if (check_feasibility(sol_, inst_).feasible()) {
        if (!found_) best_ = sol_.placements;
        found_ = true;
        return first_only_;
      }
      return false;
    }
    const int loop_id = order_[depth];
    const ControlLoop& loop = inst_.loop(loop_id);
    const GlobalLimits& g = inst_.limits;
    for (int leaf : leaves_) {
      if (channels_left_[leaf] < loop.signals) continue;
      double survival = 1.0;
      double delay = 0.0;
      for (int v = leaf;;) {
        const Node& n = sol_.nodes[v];
        const DeviceType& d = inst_.device(n.type);
        survival = path::survival_step(survival, d);
        if (survival < g.min_loop_reliability || delay > g.max_loop_delay)
          break;
        const bool fits =
            d.is_processor() &&
            memory_used_[v] + loop.mem_demand <= d.memory &&
            d.instr_time *
                    static_cast<double>(instr_used_[v] + loop.instr_count) <=
                g.max_cycle_time;
        if (fits) {
          channels_left_[leaf] -= loop.signals;
          memory_used_[v] += loop.mem_demand;
          instr_used_[v] += loop.instr_count;
          sol_.placements[loop_id - 1] = LoopPlacement{loop_id, leaf, v};
          const bool stop = descend(depth + 1);
          channels_left_[leaf] += loop.signals;
          memory_used_[v] -= loop.mem_demand;
          instr_used_[v] -= loop.instr_count;
          if (stop) return true;
        }
        if (!n.parent) break;
        delay += d.relay_delay;
        v = *n.parent;
      }
    }
    return false;
  }

  const ProblemInstance& inst_;
  Solution& sol_;
  bool first_only_;
  Deadline& deadline_;
  long& checked_;
  std::vector<int> leaves_;
  std::vector<int> order_;
  std::vector<long> channels_left_;
  std::vector<double> memory_used_;
  std::vector<long> instr_used_;
  std::vector<LoopPlacement> best_;
  bool found_ = false;
};

// Cheap necessary conditions on channel capacity.
bool channels_can_fit(const ProblemInstance& inst, const Solution& sol) {
  long capacity = 0;
  int widest = 0;
  for (const Node& n : sol.nodes)
    if (n.is_leaf()) {
      capacity += inst.device(n.type).channels;
      widest = std::max(widest, inst.device(n.type).channels);
    }
  int largest = 0;
  for (const ControlLoop& l : inst.loops) largest = std::max(largest, l.signals);
  return capacity >= inst.total_signals() && widest >= largest;
}

}  // namespace

OracleResult solve_exact(const ProblemInstance& inst,
                         const OracleLimits& limits) {
  OracleResult result;
  const int max_nodes = limits.max_nodes > 0
                            ? limits.max_nodes
                            : 1 + (inst.levels() - 1) * inst.num_loops();
  Deadline deadline(limits.time_budget_s);
  try {
    const Catalog catalog = build_catalog(inst, max_nodes, deadline);
    const auto& roots = catalog[1];
    result.trees_enumerated = static_cast<long>(roots.size());

    // Same per-type summation as total_cost(), so costs compare exactly.
    std::vector<double> root_cost(roots.size(), 0.0);
    for (std::size_t r = 0; r < roots.size(); ++r)
      for (int t = 1; t <= inst.num_types(); ++t)
        root_cost[r] += roots[r].type_counts[t] * inst.device(t).cost;

    std::vector<int> order(roots.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return root_cost[a] < root_cost[b];
    });

    for (int r : order) {
      const double cost = root_cost[r];
      if (limits.prune && result.cost && cost >= *result.cost) break;
      Solution sol = materialize(catalog, r);
      if (limits.prune && !channels_can_fit(inst, sol)) continue;
      PlacementSearch search(inst, sol, limits.prune, deadline,
                             result.placements_checked);
      if (search.run() && (!result.cost || cost < *result.cost)) {
        result.cost = cost;
        result.solution = std::move(sol);
      }
    }
  } catch (const OutOfTime&) {
    result.status = OracleStatus::kBudgetExceeded;
    result.solution.reset();
    result.cost.reset();
    return result;
  }
  result.status =
      result.cost ? OracleStatus::kOptimal : OracleStatus::kInfeasible;
  return result;
}

}  // namespace dcssp
