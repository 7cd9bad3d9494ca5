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

#include "cli.hpp"

#include <filesystem>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "dcssp/aco.hpp"
#include "dcssp/experiment.hpp"
#include "dcssp/instance.hpp"
#include "dcssp/oracle.hpp"
#include "dcssp/structure.hpp"
#include "dcssp/text.hpp"

namespace dcssp::cli {

namespace {

struct SolveFlags {
  std::string instance;
  int iterations = 500;
  int ants = 20;
  std::string alpha = "2.0";
  std::string beta = "1.0";
  std::string rho = "0.25";
  std::uint64_t seed = 1;
  bool local_search = true;
  std::string out_tree, out_solution, out_trace;
};

struct OracleFlags {
  std::string instance;
  int max_nodes = 0;
  double time_budget_s = 60.0;
  std::string out_solution;
};

struct ExperimentFlags {
  std::string manifest;
  std::string out_dir;
  unsigned threads = 0;
};

struct GenFlags {
  std::string profile = "random";
  int u = 5;
  int a = 200;
  int s = 4;
  std::uint64_t seed = 1;
  std::string out;
};

ScheduleExpr parse_flag(const std::string& name, const std::string& text) {
  try {
    return parse_schedule(text);
  } catch (const ScheduleSyntaxError& e) {
    throw Error(name + ": " + e.what());
  }
}

int cmd_solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
  const ProblemInstance inst = load_instance(f.instance);
  AcoParams params;
  params.n_iterations = f.iterations;
  params.n_ants = f.ants;
  params.alpha = parse_flag("alpha", f.alpha);
  params.beta = parse_flag("beta", f.beta);
  params.rho = parse_flag("rho", f.rho);
  params.seed = f.seed;
  params.local_search = f.local_search;
  validate_params(params);

  const RunResult result = run_aco(inst, params);
  if (!f.out_trace.empty()) write_file(f.out_trace, trace_csv(result));
  if (!result.best_solution) {
    err << "no feasible solution found in " << f.iterations << " iterations\n";
    return kExitInfeasible;
  }
  if (!f.out_tree.empty())
    write_file(f.out_tree, to_dot(*result.best_solution, inst));
  if (!f.out_solution.empty())
    write_file(f.out_solution, serialize_solution(*result.best_solution));
  out << "best_cost=" << format_number(result.best_cost) << "\n";
  return kExitOk;
}

int cmd_oracle(const OracleFlags& f, std::ostream& out, std::ostream& err) {
  const ProblemInstance inst = load_instance(f.instance);
  OracleLimits limits;
  limits.max_nodes = f.max_nodes;
  limits.time_budget_s = f.time_budget_s;
  const OracleResult r = solve_exact(inst, limits);
  err << "enumerated " << r.trees_enumerated << " canonical trees, "
      << r.placements_checked << " placements checked\n";
  switch (r.status) {
    case OracleStatus::kBudgetExceeded:
      err << "time budget of " << f.time_budget_s << " s exceeded\n";
      return kExitError;
    case OracleStatus::kInfeasible:
      out << "infeasible\n";
      return kExitInfeasible;
    case OracleStatus::kOptimal:
      break;
  }
  if (!f.out_solution.empty())
    write_file(f.out_solution, serialize_solution(*r.solution));
  out << format_number(*r.cost) << "\n";
  return kExitOk;
}

int cmd_experiment(const ExperimentFlags& f, std::ostream& out,
                   std::ostream& err) {
  const ExperimentSpec spec = load_manifest(f.manifest);
  std::filesystem::create_directories(f.out_dir);
  const BatchResult result = run_batch(spec, f.threads);
  const auto dir = std::filesystem::path(f.out_dir);
  write_summary_csv(result, (dir / "summary.csv").string());
  write_convergence_csv(result, (dir / "convergence.csv").string());
  for (const SetResult& s : result.sets)
    err << s.params.label << ": c_min=" << format_number(s.stats.c_min)
        << " c_avg=" << format_number(s.stats.c_avg)
        << " cv=" << format_number(s.stats.cv_percent) << "%\n";
  out << "wrote " << (dir / "summary.csv").string() << " and "
      << (dir / "convergence.csv").string() << "\n";
  return kExitOk;
}

int cmd_gen(const GenFlags& f, std::ostream& out) {
  GeneratorSettings g;
  g.profile = parse_profile(f.profile);
  g.num_types = f.u;
  g.num_loops = f.a;
  g.levels = f.s;
  const ProblemInstance inst = generate_instance(g, f.seed);
  write_file(f.out, serialize_instance(inst));
  out << "wrote " << f.out << " (U=" << inst.num_types()
      << ", A=" << inst.num_loops() << ", S=" << inst.levels() << ")\n";
  return kExitOk;
}

int cmd_validate(const std::string& path, std::ostream& out,
                 std::ostream& err) {
  const ProblemInstance inst = parse_instance_unvalidated(read_file(path));
  const auto violations = validate_instance(inst);
  for (const auto& v : violations)
    err << v.path << ": " << v.message << " (" << v.rule << ")\n";
  if (!violations.empty()) return kExitError;
  out << "valid\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Distributed control system structure synthesis", "dcssp"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* s = app.add_subcommand("solve", "Run the ant colony solver");
  s->add_option("--instance", solve.instance, "Instance JSON")->required();
  s->add_option("--iterations", solve.iterations, "Iterations")
      ->capture_default_str();
  s->add_option("--ants", solve.ants, "Ants per iteration")
      ->capture_default_str();
  s->add_option("--alpha", solve.alpha, "Pheromone weight, expression in n")
      ->capture_default_str();
  s->add_option("--beta", solve.beta, "Heuristic weight, expression in n")
      ->capture_default_str();
  s->add_option("--rho", solve.rho, "Evaporation rate, expression in n")
      ->capture_default_str();
  s->add_option("--seed", solve.seed, "Random seed")->capture_default_str();
  s->add_option("--local-search", solve.local_search,
                "Type-exchange local search (true/false)")
      ->capture_default_str();
  s->add_option("--out-tree", solve.out_tree, "DOT output");
  s->add_option("--out-solution", solve.out_solution, "Solution JSON output");
  s->add_option("--out-trace", solve.out_trace, "Convergence CSV output");

  OracleFlags oracle;
  auto* o = app.add_subcommand("oracle", "Exhaustive optimum for small instances");
  o->add_option("--instance", oracle.instance, "Instance JSON")->required();
  o->add_option("--max-nodes", oracle.max_nodes,
                "Node cap (0 = 1 + (S-1)*A)")
      ->capture_default_str();
  o->add_option("--time-budget-s", oracle.time_budget_s, "Time budget")
      ->capture_default_str();
  o->add_option("--out-solution", oracle.out_solution, "Solution JSON output");

  ExperimentFlags experiment;
  auto* e = app.add_subcommand("experiment", "Run a batch from a manifest");
  e->add_option("--manifest", experiment.manifest, "Manifest JSON")->required();
  e->add_option("--out-dir", experiment.out_dir, "Output directory")
      ->required();
  e->add_option("--threads", experiment.threads, "Worker threads (0 = auto)")
      ->capture_default_str();

  GenFlags gen;
  auto* g = app.add_subcommand("gen", "Generate an instance");
  g->add_option("--profile", gen.profile, "plc-io or random")
      ->check(CLI::IsMember({"plc-io", "random"}))
      ->capture_default_str();
  g->add_option("--u", gen.u, "Device types (random profile)")
      ->capture_default_str();
  g->add_option("--a", gen.a, "Control loops")->capture_default_str();
  g->add_option("--s", gen.s, "Hierarchy levels")->capture_default_str();
  g->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  g->add_option("--out", gen.out, "Instance JSON output")->required();

  std::string validate_path;
  auto* v = app.add_subcommand("validate", "Check an instance file");
  v->add_option("--instance", validate_path, "Instance JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) return app.exit(ex, out, err);
    err << "error: " << ex.what() << "\n";
    return kExitError;
  }

  try {
    if (s->parsed()) return cmd_solve(solve, out, err);
    if (o->parsed()) return cmd_oracle(oracle, out, err);
    if (e->parsed()) return cmd_experiment(experiment, out, err);
    if (g->parsed()) return cmd_gen(gen, out);
    if (v->parsed()) return cmd_validate(validate_path, out, err);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace dcssp::cli
