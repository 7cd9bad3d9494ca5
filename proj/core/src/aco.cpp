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

#include "dcssp/aco.hpp"

#include <cmath>
#include <numeric>

#include "dcssp/local_search.hpp"
#include "dcssp/text.hpp"

namespace dcssp {

namespace {

// Types allowed for a node at `level` under a parent of `parent_type`
// (0 for the root). Repeaters only have repeater children, the root is a
// processor, and a node above the leaf level needs at least one port.
std::vector<int> type_candidates(const ProblemInstance& inst, int level,
                                 int parent_type) {
  std::vector<int> out;
  const bool repeater_parent =
      parent_type != 0 && !inst.device(parent_type).is_processor();
  for (const DeviceType& d : inst.devices) {
    if (parent_type == 0 && !d.is_processor()) continue;
    if (repeater_parent && d.is_processor()) continue;
    if (level < inst.levels() && d.max_children < 1) continue;
    out.push_back(d.id);
  }
  return out;
}

}  // namespace

Construction construct_solution(const ProblemInstance& inst,
                                const PheromoneTables& tables, double alpha,
                                double beta, Rng& rng) {
  Construction out;
  const int levels = inst.levels();
  Solution sol;
  std::vector<Option> options;

  auto choose_type = [&](int level, int parent_type) -> int {
    const auto candidates = type_candidates(inst, level, parent_type);
    options.clear();
    for (int t : candidates)
      options.push_back({tables.at(tables.type_cell(level, parent_type, t)),
                         1.0 / inst.device(t).cost});
    const auto pick = select_option(options, alpha, beta, rng);
    if (!pick) return 0;
    const int t = candidates[*pick];
    out.trace.push_back(tables.type_cell(level, parent_type, t));
    return t;
  };

  const int root_type = choose_type(1, 0);
  if (root_type == 0) {
    out.failure = "root type: no usable processor type";
    return out;
  }
  sol.nodes.push_back(Node{0, 1, root_type, std::nullopt, {}});

  // Breadth-first: node ids grow level by level.
  for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
    const int level = sol.nodes[i].level;
    if (level >= levels) continue;
    const int type = sol.nodes[i].type;
    const int max_k = inst.device(type).max_children;
    options.clear();
    for (int k = 1; k <= max_k; ++k)
      options.push_back({tables.at(tables.count_cell(level, type, k)), 1.0});
    const auto pick = select_option(options, alpha, beta, rng);
    if (!pick) {
      out.failure = "child count at level " + std::to_string(level);
      return out;
    }
    const int k = static_cast<int>(*pick) + 1;
    out.trace.push_back(tables.count_cell(level, type, k));
    for (int c = 0; c < k; ++c) {
      const int child_type = choose_type(level + 1, type);
      if (child_type == 0) {
        out.failure = "child type at level " + std::to_string(level + 1);
        return out;
      }
      const int id = static_cast<int>(sol.nodes.size());
      sol.nodes.push_back(
          Node{id, level + 1, child_type, static_cast<int>(i), {}});
      sol.nodes[i].children.push_back(id);
    }
  }

  std::vector<int> leaves;
  for (const Node& n : sol.nodes)
    if (n.level == levels) leaves.push_back(n.id);

  const auto count = sol.nodes.size();
  std::vector<long> channels_left(count, 0);
  for (int v : leaves) channels_left[v] = inst.device(sol.nodes[v].type).channels;
  std::vector<double> memory_used(count, 0.0);
  std::vector<long> instr_used(count, 0);

  std::vector<int> order(inst.num_loops());
  std::iota(order.begin(), order.end(), 1);
  rng.shuffle(std::span<int>(order));

  sol.placements.resize(inst.num_loops());
  std::vector<int> leaf_candidates;
  std::vector<int> hosts;
  const GlobalLimits& g = inst.limits;
  for (int loop_id : order) {
    const ControlLoop& loop = inst.loop(loop_id);

    leaf_candidates.clear();
    options.clear();
    for (int v : leaves) {
      if (channels_left[v] >= loop.signals) {
        leaf_candidates.push_back(v);
        options.push_back({1.0, static_cast<double>(channels_left[v]) + 1.0});
      }
    }
    const auto leaf_pick = select_option(options, alpha, beta, rng);
    if (!leaf_pick) {
      out.failure = "connect leaf for loop " + std::to_string(loop_id);
      return out;
    }
    const int leaf = leaf_candidates[*leaf_pick];

    // Walk towards the root with the same arithmetic as check_feasibility.
    hosts.clear();
    options.clear();
    double survival = 1.0;
    double delay = 0.0;
    for (int v = leaf;;) {
      const Node& n = sol.nodes[v];
      const DeviceType& d = inst.device(n.type);
      survival = path::survival_step(survival, d);
      const bool fits =
          d.is_processor() && memory_used[v] + loop.mem_demand <= d.memory &&
          d.instr_time * static_cast<double>(instr_used[v] + loop.instr_count) <=
              g.max_cycle_time &&
          survival >= g.min_loop_reliability && delay <= g.max_loop_delay;
      if (fits) {
        hosts.push_back(v);
        options.push_back(
            {tables.at(tables.loop_level_cell(loop_id, n.level)), 1.0});
      }
      if (!n.parent) break;
      delay += d.relay_delay;
      v = *n.parent;
    }
    const auto host_pick = select_option(options, alpha, beta, rng);
    if (!host_pick) {
      out.failure = "processing node for loop " + std::to_string(loop_id);
      return out;
    }
    const int host = hosts[*host_pick];
    out.trace.push_back(
        tables.loop_level_cell(loop_id, sol.nodes[host].level));
    channels_left[leaf] -= loop.signals;
    memory_used[host] += loop.mem_demand;
    instr_used[host] += loop.instr_count;
    sol.placements[loop_id - 1] = LoopPlacement{loop_id, leaf, host};
  }

  if (!check_feasibility(sol, inst).feasible()) {
    out.failure = "post-construction constraint check";
    return out;
  }
  out.solution = std::move(sol);
  return out;
}

DecisionTrace trace_of(const Solution& sol, const ProblemInstance& inst,
                       const PheromoneTables& tables) {
  DecisionTrace trace;
  const int root = sol.root();
  trace.push_back(tables.type_cell(1, 0, sol.nodes[root].type));
  for (const Node& n : sol.nodes) {
    if (n.level >= inst.levels() || n.children.empty()) continue;
    trace.push_back(tables.count_cell(n.level, n.type,
                                      static_cast<int>(n.children.size())));
    for (int c : n.children)
      trace.push_back(
          tables.type_cell(n.level + 1, n.type, sol.nodes[c].type));
  }
  for (const LoopPlacement& p : sol.placements)
    trace.push_back(
        tables.loop_level_cell(p.loop, sol.nodes[p.process_node].level));
  return trace;
}

void validate_params(const AcoParams& params) {
  if (params.n_ants < 1) throw Error("n_ants must be at least 1");
  if (params.n_iterations < 1) throw Error("n_iterations must be at least 1");
  const PheromoneBounds& b = params.bounds;
  if (!(b.tau_min > 0.0 && b.tau_min <= b.tau0 && b.tau0 <= b.tau_max))
    throw Error("pheromone bounds must satisfy 0 < tau_min <= tau0 <= tau_max");
  if (params.deposit_scale &&
      !(*params.deposit_scale > 0.0 && std::isfinite(*params.deposit_scale)))
    throw Error("deposit scale must be positive");
  if (params.local_search_budget < 0)
    throw Error("local search budget must be non-negative");
  const std::pair<const ScheduleExpr*, ScheduleRole> schedules[] = {
      {&params.rho, ScheduleRole::kRho},
      {&params.alpha, ScheduleRole::kAlpha},
      {&params.beta, ScheduleRole::kBeta}};
  for (const auto& [expr, role] : schedules) {
    const auto bad = validate_schedule_range(*expr, params.n_iterations, role);
    if (!bad.empty()) throw Error(bad.front().message);
  }
}

RunResult run_aco(const ProblemInstance& inst, const AcoParams& params,
                  IterationObserver observer, void* observer_data) {
  validate_params(params);
  RunResult result;
  result.rng_seed = params.seed;
  result.trace.reserve(params.n_iterations);

  PheromoneTables tables(inst, params.bounds);
  std::optional<double> q = params.deposit_scale;

  for (int n = 1; n <= params.n_iterations; ++n) {
    const double alpha = eval_schedule(params.alpha, n);
    const double beta = eval_schedule(params.beta, n);
    const double rho = eval_schedule(params.rho, n);

    std::optional<Solution> iter_best;
    double iter_best_cost = std::numeric_limits<double>::infinity();
    int feasible = 0;
    for (int ant = 0; ant < params.n_ants; ++ant) {
      Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(n),
                          static_cast<std::uint64_t>(ant)));
      Construction c = construct_solution(inst, tables, alpha, beta, rng);
      if (!c.solution) continue;
      ++feasible;
      Solution s = params.local_search
                       ? improve(*c.solution, inst, params.local_search_budget)
                       : std::move(*c.solution);
      const double cost = total_cost(s, inst);
      if (cost < iter_best_cost) {
        iter_best_cost = cost;
        iter_best = std::move(s);
      }
    }

    tables.evaporate(rho);
    if (iter_best) {
      if (!q) q = iter_best_cost;
      tables.deposit(trace_of(*iter_best, inst, tables), *q / iter_best_cost);
      if (iter_best_cost < result.best_cost) {
        result.best_cost = iter_best_cost;
        result.best_solution = *iter_best;
      }
    }
    result.trace.push_back({n, result.best_cost, iter_best_cost, feasible});
    if (observer) observer(n, tables, observer_data);
  }
  return result;
}

std::string trace_csv(const RunResult& result) {
  std::string out = "iteration,best_so_far,iteration_best,feasible_ants\n";
  for (const IterationRecord& r : result.trace) {
    out += std::to_string(r.iteration) + "," + format_number(r.best_so_far) +
           "," + format_number(r.iteration_best) + "," +
           std::to_string(r.feasible_ants) + "\n";
  }
  return out;
}

}  // namespace dcssp
