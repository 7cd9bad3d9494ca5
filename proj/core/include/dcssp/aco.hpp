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

#ifndef DCSSP_ACO_HPP_
#define DCSSP_ACO_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcssp/instance.hpp"
#include "dcssp/rng.hpp"
#include "dcssp/schedule.hpp"
#include "dcssp/structure.hpp"

namespace dcssp {

enum class TableId : std::uint8_t { kType, kCount, kLoopLevel };

// One pheromone cell touched by a probabilistic decision.
struct CellRef {
  TableId table;
  std::size_t index;

  friend bool operator==(const CellRef&, const CellRef&) = default;
  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

using DecisionTrace = std::vector<CellRef>;

struct PheromoneBounds {
  double tau_min = 0.01;
  double tau0 = 1.0;
  double tau_max = 10.0;
};

// Pheromone mass for every structural decision an ant can make. The shape
// depends only on the instance:
//   type table       (level 1..S) x (parent type 0..U, 0 = root) x (type 1..U)
//   count table      (level 1..S) x (node type 1..U) x (child count 1..maxM)
//   loop-level table (loop 1..A) x (processing level 1..S)
class PheromoneTables {
 public:
  PheromoneTables(const ProblemInstance& inst, PheromoneBounds bounds = {});

  CellRef type_cell(int level, int parent_type, int type) const;
  CellRef count_cell(int level, int node_type, int count) const;
  CellRef loop_level_cell(int loop_id, int level) const;

  double at(CellRef cell) const { return table(cell.table)[cell.index]; }
  void set(CellRef cell, double value);

  // Multiplies every cell by (1 - rho), then clamps to the bounds.
  void evaporate(double rho);

  // Adds `amount` to every traced cell, then clamps. A cell listed twice
  // receives the deposit twice.
  void deposit(std::span<const CellRef> trace, double amount);

  const PheromoneBounds& bounds() const { return bounds_; }
  std::size_t size(TableId id) const { return table(id).size(); }
  double min_value() const;
  double max_value() const;

  friend bool operator==(const PheromoneTables&,
                         const PheromoneTables&) = default;

 private:
  const std::vector<double>& table(TableId id) const;
  std::vector<double>& table(TableId id);
  double clamp(double v) const;

  int levels_;
  int types_;
  int max_count_;
  int loops_;
  PheromoneBounds bounds_;
  std::vector<double> type_;
  std::vector<double> count_;
  std::vector<double> loop_level_;
};

// A candidate with pheromone mass `tau` and heuristic desirability `eta`.
struct Option {
  double tau;
  double eta;
};

// Normalized tau^alpha * eta^beta. Empty when the weights are unusable
// (no options, non-finite or all zero).
std::vector<double> selection_probabilities(std::span<const Option> options,
                                            double alpha, double beta);

// Draws an index with the probabilities above; nullopt signals a
// construction failure.
std::optional<std::size_t> select_option(std::span<const Option> options,
                                         double alpha, double beta, Rng& rng);

struct Construction {
  std::optional<Solution> solution;
  DecisionTrace trace;
  std::string failure;  // step that starved, when solution is empty
};

// Builds one tree root-to-leaves and places every loop. Any returned
// solution passes check_feasibility.
Construction construct_solution(const ProblemInstance& inst,
                                const PheromoneTables& tables, double alpha,
                                double beta, Rng& rng);

// Decision cells that a construction producing `sol` would have touched.
DecisionTrace trace_of(const Solution& sol, const ProblemInstance& inst,
                       const PheromoneTables& tables);

struct AcoParams {
  int n_ants = 20;
  int n_iterations = 500;
  ScheduleExpr alpha = ScheduleExpr::constant(2.0);
  ScheduleExpr beta = ScheduleExpr::constant(1.0);
  ScheduleExpr rho = ScheduleExpr::constant(0.25);
  std::uint64_t seed = 1;
  PheromoneBounds bounds;
  std::optional<double> deposit_scale;  // Q; empty means "auto"
  bool local_search = true;
  long local_search_budget = 10000;
};

// Throws Error naming the first invalid field or schedule value.
void validate_params(const AcoParams& params);

struct IterationRecord {
  int iteration;
  double best_so_far;     // +inf until a feasible ant appears
  double iteration_best;  // +inf when every ant failed
  int feasible_ants;
};

struct RunResult {
  std::optional<Solution> best_solution;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<IterationRecord> trace;
  std::uint64_t rng_seed = 0;
};

// Optional hook to observe pheromone tables after each iteration's update.
using IterationObserver =
    void (*)(int iteration, const PheromoneTables& tables, void* user);

RunResult run_aco(const ProblemInstance& inst, const AcoParams& params,
                  IterationObserver observer = nullptr,
                  void* observer_data = nullptr);

// CSV with columns iteration,best_so_far,iteration_best,feasible_ants.
std::string trace_csv(const RunResult& result);

}  // namespace dcssp

#endif  // DCSSP_ACO_HPP_
