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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each check reports what it measured.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "dcssp/aco.hpp"
#include "dcssp/experiment.hpp"
#include "dcssp/local_search.hpp"
#include "dcssp/oracle.hpp"
#include "dcssp/schedule.hpp"
#include "dcssp/structure.hpp"
#include "dcssp/text.hpp"
#include "support/fixtures.hpp"

namespace dcssp {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_runtime(Verdict& v, Clock::time_point start, double limit_s) {
  const double s = seconds_since(start);
  if (s >= limit_s)
    v.fail("runtime " + format_number(s) + " s over " +
           format_number(limit_s) + " s");
}

Verdict selection_fidelity() {
  const auto start = Clock::now();
  Verdict v;
  Rng gen(derive_seed(2026, 1));
  double worst_sigma = 0.0;
  for (int set = 0; set < 100 && v.pass; ++set) {
    const int k = static_cast<int>(gen.uniform_int(2, 10));
    std::vector<Option> options(k);
    for (auto& o : options) o = {gen.uniform(0.01, 10.0), gen.uniform(0.001, 1.0)};
    const double alpha = gen.uniform(0.0, 5.0);
    const double beta = gen.uniform(0.0, 5.0);

    const std::vector<double> p = selection_probabilities(options, alpha, beta);
    if (p.size() != options.size()) {
      v.fail("set " + std::to_string(set) + ": no probabilities");
      break;
    }
    double direct_sum = 0.0;
    std::vector<double> direct(k);
    for (int i = 0; i < k; ++i) {
      direct[i] = std::pow(options[i].tau, alpha) * std::pow(options[i].eta, beta);
      direct_sum += direct[i];
    }
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-12) v.fail("sum off by " + format_number(sum - 1.0));
    for (int i = 0; i < k; ++i)
      if (std::abs(p[i] - direct[i] / direct_sum) > 1e-12)
        v.fail("set " + std::to_string(set) + " option " + std::to_string(i) +
               " differs from direct evaluation");

    constexpr int kDraws = 100000;
    std::vector<int> hits(k, 0);
    Rng draw(derive_seed(2026, 2, set));
    for (int d = 0; d < kDraws; ++d) {
      const auto pick = select_option(options, alpha, beta, draw);
      if (!pick) {
        v.fail("select_option returned nothing");
        break;
      }
      ++hits[*pick];
    }
    for (int i = 0; i < k; ++i) {
      const double sigma = std::sqrt(kDraws * p[i] * (1.0 - p[i]));
      const double dev = std::abs(hits[i] - kDraws * p[i]);
      if (sigma > 0) worst_sigma = std::max(worst_sigma, dev / sigma);
      if (dev > 4.0 * sigma + 1e-9)
        v.fail("set " + std::to_string(set) + " option " + std::to_string(i) +
               " frequency off by " + format_number(dev / sigma) + " sigma");
    }
  }
  check_runtime(v, start, 5.0);
  if (v.pass)
    v.detail = "100 sets, worst frequency deviation " +
               format_number(std::round(worst_sigma * 100) / 100) + " sigma, " +
               format_number(std::round(seconds_since(start) * 100) / 100) + " s";
  return v;
}

Verdict pheromone_dynamics() {
  const auto start = Clock::now();
  Verdict v;
  const ProblemInstance inst = testing::plc_io_instance(6, 3);
  PheromoneTables tables(inst);
  const PheromoneBounds b = tables.bounds();
  double worst = 0.0;
  for (int k = 1; k <= 50; ++k) {
    tables.evaporate(0.25);
    const double expected = std::max(b.tau_min, b.tau0 * std::pow(0.75, k));
    for (TableId id : {TableId::kType, TableId::kCount, TableId::kLoopLevel})
      for (std::size_t i = 0; i < tables.size(id); ++i) {
        const double err = std::abs(tables.at({id, i}) - expected);
        worst = std::max(worst, err);
        if (err > 1e-9)
          v.fail("cell off by " + format_number(err) + " after " +
                 std::to_string(k) + " evaporations");
      }
  }
  check_runtime(v, start, 1.0);
  if (v.pass) v.detail = "50 steps, max error " + format_number(worst);
  return v;
}

Verdict schedule_evaluation() {
  const auto start = Clock::now();
  Verdict v;
  const char* rows[][3] = {{"2.0", "1.0", "0.25"},
                           {"2.0", "0.0", "0.25"},
                           {"2/(n + 0.01)", "0.1n", "0.25"},
                           {"0.2n", "1/(n + 0.01)", "0.25"}};
  for (const auto& row : rows)
    for (const char* text : row) {
      try {
        const ScheduleExpr e = parse_schedule(text);
        for (long n = 1; n <= 500; ++n) (void)eval_schedule(e, n);
      } catch (const std::exception& ex) {
        v.fail(std::string(text) + ": " + ex.what());
      }
    }
  if (v.pass) {
    const double a = eval_schedule(parse_schedule("2/(n + 0.01)"), 1);
    if (std::abs(a - 2.0 / 1.01) > 1e-12 || std::abs(a - 1.9801980198019802) > 1e-12)
      v.fail("2/(n + 0.01) at n=1 gave " + format_number(a));
    const double b = eval_schedule(parse_schedule("0.1n"), 10);
    if (b != 1.0) v.fail("0.1n at n=10 gave " + format_number(b));
    if (v.pass)
      v.detail = "12 expressions parse; values " + format_number(a) + ", " +
                 format_number(b);
  }
  check_runtime(v, start, 1.0);
  return v;
}

AcoParams default_params(int iterations, int ants, std::uint64_t seed) {
  AcoParams p;
  p.n_iterations = iterations;
  p.n_ants = ants;
  p.seed = seed;
  p.local_search = true;
  return p;
}

Verdict oracle_equivalence() {
  const auto start = Clock::now();
  Verdict v;
  int compared = 0, equal = 0;
  double worst_ratio = 0.0;
  for (std::uint64_t seed = 1; compared < 20 && seed < 1000; ++seed) {
    const ProblemInstance inst = testing::tiny_random_instance(seed, 3, 5, 3);
    OracleLimits limits;
    limits.time_budget_s = 60.0;
    const OracleResult exact = solve_exact(inst, limits);
    if (exact.status != OracleStatus::kOptimal) continue;
    ++compared;
    double best = INFINITY;
    for (int run = 0; run < 30; ++run)
      best = std::min(best,
                      run_aco(inst, default_params(200, 20, derive_seed(seed, run)))
                          .best_cost);
    const double ratio = best / *exact.cost;
    worst_ratio = std::max(worst_ratio, ratio);
    if (best == *exact.cost) ++equal;
    if (ratio > 1.05)
      v.fail("instance seed " + std::to_string(seed) + ": best " +
             format_number(best) + " vs optimum " + format_number(*exact.cost));
  }
  if (compared < 20)
    v.fail("only " + std::to_string(compared) + " solvable instances found");
  if (equal < 18)
    v.fail("optimum matched on " + std::to_string(equal) + " of 20");
  check_runtime(v, start, 30 * 60.0);
  if (v.pass)
    v.detail = std::to_string(equal) + "/20 optimal, worst ratio " +
               format_number(worst_ratio) + ", " +
               format_number(std::round(seconds_since(start))) + " s";
  return v;
}

Verdict schedule_ranking() {
  Verdict v;
  const ExperimentSpec spec =
      load_manifest(std::string(DCSSP_DATA_DIR) + "/table1.json");
  const BatchResult r = run_batch(spec);
  std::ostringstream table;
  std::size_t best_avg = 0, best_cv = 0;
  for (std::size_t i = 0; i < r.sets.size(); ++i) {
    const CostStats& s = r.sets[i].stats;
    if (s.c_avg < r.sets[best_avg].stats.c_avg) best_avg = i;
    if (s.cv_percent < r.sets[best_cv].stats.cv_percent) best_cv = i;
    table << (i ? "; " : "") << "set " << r.sets[i].params.label
          << " c_avg=" << format_number(std::round(s.c_avg * 100) / 100)
          << " cv=" << format_number(std::round(s.cv_percent * 100) / 100);
  }
  if (r.sets.size() != 4) {
    v.fail("expected 4 parameter sets");
    return v;
  }
  if (best_avg != 2 || best_cv != 2)
    v.fail("lowest c_avg is set " + r.sets[best_avg].params.label +
           ", lowest cv is set " + r.sets[best_cv].params.label + " (" +
           table.str() + ")");
  else
    v.detail = table.str();
  return v;
}

Verdict feasibility_and_local_search() {
  const auto start = Clock::now();
  Verdict v;
  int built = 0, improved = 0;
  for (std::uint64_t seed = 1; built < 1000 && seed < 100000; ++seed) {
    const ProblemInstance inst = testing::tiny_random_instance(seed, 5, 12, 4);
    const PheromoneTables tables(inst);
    Rng rng(derive_seed(seed, 77));
    for (int ant = 0; ant < 10 && built < 1000; ++ant) {
      const Construction c = construct_solution(inst, tables, 1.0, 1.0, rng);
      if (!c.solution) continue;
      ++built;
      if (!check_feasibility(*c.solution, inst).feasible()) {
        v.fail("constructed solution infeasible (instance seed " +
               std::to_string(seed) + ")");
        continue;
      }
      const Solution better = improve(*c.solution, inst, 10000);
      const double before = total_cost(*c.solution, inst);
      const double after = total_cost(better, inst);
      if (after > before) v.fail("local search raised cost");
      if (!check_feasibility(better, inst).feasible())
        v.fail("local search broke feasibility");
      if (after < before) ++improved;
    }
  }
  if (built < 1000) v.fail("only " + std::to_string(built) + " constructions");
  check_runtime(v, start, 5 * 60.0);
  if (v.pass)
    v.detail = "1000 solutions feasible, " + std::to_string(improved) +
               " improved by local search";
  return v;
}

struct ShapeRun {
  std::string json, dot, trace;
};

ProblemInstance plc_io_50() {
  GeneratorSettings g;
  g.profile = GeneratorProfile::kPlcIo;
  g.num_loops = 50;
  g.levels = 3;
  return generate_instance(g, 1);
}

Verdict tree_shape(ShapeRun& artifacts) {
  const auto start = Clock::now();
  Verdict v;
  const ProblemInstance inst = plc_io_50();
  const RunResult r = run_aco(inst, AcoParams{});
  if (!r.best_solution) {
    v.fail("no feasible solution");
    return v;
  }
  const Solution& sol = *r.best_solution;
  if (!check_feasibility(sol, inst).feasible()) v.fail("solution infeasible");

  std::vector<long> wired(sol.nodes.size(), 0);
  long total = 0;
  for (const LoopPlacement& p : sol.placements) {
    wired[p.connect_leaf] += inst.loop(p.loop).signals;
    total += inst.loop(p.loop).signals;
  }
  long fullest = 0;
  std::size_t widest = 0;
  for (const Node& n : sol.nodes) {
    widest = std::max(widest, n.children.size());
    if (n.is_leaf()) fullest = std::max(fullest, wired[n.id]);
    if (n.is_leaf() && wired[n.id] > 8) v.fail("leaf with " + std::to_string(wired[n.id]) + " signals");
    if (n.children.size() > 4) v.fail("node with " + std::to_string(n.children.size()) + " children");
  }
  if (sol.placements.size() != static_cast<std::size_t>(inst.num_loops()) ||
      total != inst.total_signals())
    v.fail("connected signals " + std::to_string(total) + " vs " +
           std::to_string(inst.total_signals()));
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    if (r.trace[i].best_so_far > r.trace[i - 1].best_so_far)
      v.fail("best-so-far increases at iteration " + std::to_string(i + 1));

  artifacts = {serialize_solution(sol), to_dot(sol, inst), trace_csv(r)};
  check_runtime(v, start, 120.0);
  if (v.pass)
    v.detail = "cost " + format_number(r.best_cost) + ", " +
               std::to_string(sol.nodes.size()) + " nodes, fullest leaf " +
               std::to_string(fullest) + " signals, widest node " +
               std::to_string(widest) + " children, " +
               format_number(std::round(seconds_since(start) * 10) / 10) + " s";
  return v;
}

Verdict determinism(const ShapeRun& first) {
  Verdict v;
  ShapeRun second;
  const Verdict again = tree_shape(second);
  if (!again.pass) v.fail("repeat run: " + again.detail);
  if (first.json != second.json) v.fail("solution JSON differs");
  if (first.dot != second.dot) v.fail("DOT differs");
  if (first.trace != second.trace) v.fail("trace CSV differs");
  if (v.pass) v.detail = "solution JSON, DOT and trace identical";
  return v;
}

}  // namespace
}  // namespace dcssp

int main() {
  using namespace dcssp;
  ShapeRun shape;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> checks = {
      {"selection rule fidelity", selection_fidelity},
      {"pheromone dynamics", pheromone_dynamics},
      {"schedule evaluation", schedule_evaluation},
      {"oracle equivalence", oracle_equivalence},
      {"schedule ranking", schedule_ranking},
      {"feasibility and local search safety", feasibility_and_local_search},
      {"tree shape", [&] { return tree_shape(shape); }},
      {"determinism", [&] { return determinism(shape); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Verdict v;
    try {
      v = checks[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failures;
    std::printf("criterion %zu (%s): %s - %s\n", i + 1, checks[i].first.c_str(),
                v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
