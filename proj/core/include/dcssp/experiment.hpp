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

#ifndef DCSSP_EXPERIMENT_HPP_
#define DCSSP_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dcssp/aco.hpp"
#include "dcssp/instance.hpp"

namespace dcssp {

struct ParamSet {
  std::string label;
  std::string alpha;
  std::string beta;
  std::string rho;
};

// Either a file path or generator settings plus a seed.
struct InstanceSource {
  std::optional<std::string> path;
  GeneratorSettings settings;
  std::uint64_t seed = 1;

  ProblemInstance load() const;
};

struct ExperimentSpec {
  InstanceSource instance;
  std::vector<ParamSet> sets;
  int runs = 30;
  std::uint64_t base_seed = 1;
  int ants = 20;
  int iterations = 500;
  bool local_search = true;
};

// Rejects empty set lists, non-positive counts and schedules that leave
// their domain within 1..iterations.
void validate_spec(const ExperimentSpec& spec);

struct CostStats {
  double c_min = 0.0;
  double c_avg = 0.0;
  double cv_percent = 0.0;  // 100 * sample stddev (n - 1) / mean
};

// CV is 0 for a single value. Any infinite cost (a run without a feasible
// solution) makes c_avg infinite and cv NaN.
CostStats summarize(std::span<const double> costs);

struct SetResult {
  ParamSet params;
  CostStats stats;
  std::vector<double> final_costs;     // one per run, in run order
  std::vector<double> mean_curve;      // mean best-so-far per iteration
  std::vector<double> best_run_curve;  // best-so-far of the C_min run
};

struct BatchResult {
  std::vector<SetResult> sets;
};

// Seed of run `run` of set `set`.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t set,
                       std::size_t run);

// Runs every set `runs` times. Runs are spread over `threads` workers
// (0 = hardware concurrency); the result does not depend on scheduling.
BatchResult run_batch(const ExperimentSpec& spec, const ProblemInstance& inst,
                      unsigned threads = 0);
BatchResult run_batch(const ExperimentSpec& spec, unsigned threads = 0);

// Manifest JSON: instance (path or generator object), sets, runs, ants,
// iterations, seed, local_search. Relative instance paths resolve against
// `base_dir`.
ExperimentSpec parse_manifest(std::string_view text,
                              const std::string& base_dir = ".");
ExperimentSpec load_manifest(const std::string& path);

// set_label,iteration,mean_best_so_far,best_run_best_so_far
std::string convergence_csv(const BatchResult& result);
// set_label,rho,alpha,beta,c_min,c_avg,cv_percent
std::string summary_csv(const BatchResult& result);

void write_convergence_csv(const BatchResult& result, const std::string& path);
void write_summary_csv(const BatchResult& result, const std::string& path);

struct SummaryRow {
  std::string label, rho, alpha, beta;
  CostStats stats;
};

std::vector<SummaryRow> parse_summary_csv(std::string_view text);

}  // namespace dcssp

#endif  // DCSSP_EXPERIMENT_HPP_
