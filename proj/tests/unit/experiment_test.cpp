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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>

#include "dcssp/experiment.hpp"
#include "dcssp/text.hpp"
#include "support/fixtures.hpp"

namespace dcssp {
namespace {

const std::vector<ParamSet> kTableSets = {
    {"1", "2.0", "1.0", "0.25"},
    {"2", "2.0", "0.0", "0.25"},
    {"3", "2/(n + 0.01)", "0.1n", "0.25"},
    {"4", "0.2n", "1/(n + 0.01)", "0.25"}};

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

ExperimentSpec small_spec(std::vector<ParamSet> sets, int iterations, int runs) {
  ExperimentSpec spec;
  spec.sets = std::move(sets);
  spec.iterations = iterations;
  spec.runs = runs;
  spec.ants = 5;
  spec.base_seed = 17;
  return spec;
}

TEST(Summarize, IdenticalCosts) {
  const std::vector<double> c = {6, 6, 6};
  const CostStats s = summarize(c);
  EXPECT_EQ(s.c_min, 6.0);
  EXPECT_EQ(s.c_avg, 6.0);
  EXPECT_EQ(s.cv_percent, 0.0);
}

TEST(Summarize, SampleDeviation) {
  const std::vector<double> c = {4, 6};
  const CostStats s = summarize(c);
  EXPECT_EQ(s.c_min, 4.0);
  EXPECT_EQ(s.c_avg, 5.0);
  EXPECT_NEAR(s.cv_percent, 100.0 * std::sqrt(2.0) / 5.0, 1e-12);
  EXPECT_NEAR(s.cv_percent, 28.284, 1e-3);
}

TEST(Summarize, EdgeCases) {
  const std::vector<double> one = {7.5};
  EXPECT_EQ(summarize(one).cv_percent, 0.0);
  const std::vector<double> with_inf = {3.0, INFINITY};
  const CostStats s = summarize(with_inf);
  EXPECT_EQ(s.c_min, 3.0);
  EXPECT_TRUE(std::isinf(s.c_avg));
  EXPECT_TRUE(std::isnan(s.cv_percent));
  EXPECT_THROW(summarize(std::vector<double>{}), Error);
}

TEST(Summarize, PermutationInvariant) {
  std::vector<double> c = {310.5, 299.25, 402.0, 288.125, 350.0, 299.25, 512.5};
  const CostStats ref = summarize(c);
  std::mt19937 gen(4);
  for (int i = 0; i < 50; ++i) {
    std::shuffle(c.begin(), c.end(), gen);
    const CostStats s = summarize(c);
    EXPECT_EQ(s.c_min, ref.c_min);
    EXPECT_NEAR(s.c_avg, ref.c_avg, 1e-12);
    EXPECT_NEAR(s.cv_percent, ref.cv_percent, 1e-10);
  }
  EXPECT_LE(ref.c_min, ref.c_avg);
  EXPECT_GE(ref.cv_percent, 0.0);
}

TEST(RunBatch, CsvRowCounts) {
  const ProblemInstance inst = testing::plc_io_instance(15, 3);
  const BatchResult two = run_batch(
      small_spec({kTableSets[0], kTableSets[2]}, 10, 2), inst, 1);
  EXPECT_EQ(count_lines(convergence_csv(two)), 21u);
  EXPECT_EQ(count_lines(summary_csv(two)), 3u);

  const BatchResult four = run_batch(small_spec(kTableSets, 4, 2), inst, 1);
  EXPECT_EQ(count_lines(summary_csv(four)), 5u);
  EXPECT_EQ(summary_csv(four).substr(0, summary_csv(four).find('\n')),
            "set_label,rho,alpha,beta,c_min,c_avg,cv_percent");
  EXPECT_EQ(convergence_csv(four).substr(0, convergence_csv(four).find('\n')),
            "set_label,iteration,mean_best_so_far,best_run_best_so_far");
}

TEST(RunBatch, SummaryRoundTrip) {
  const ProblemInstance inst = testing::plc_io_instance(15, 3);
  const BatchResult r = run_batch(small_spec(kTableSets, 20, 3), inst, 1);
  const auto rows = parse_summary_csv(summary_csv(r));
  ASSERT_EQ(rows.size(), r.sets.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].label, r.sets[i].params.label);
    EXPECT_EQ(rows[i].alpha, r.sets[i].params.alpha);
    EXPECT_EQ(rows[i].beta, r.sets[i].params.beta);
    EXPECT_EQ(rows[i].rho, r.sets[i].params.rho);
    EXPECT_EQ(rows[i].stats.c_min, r.sets[i].stats.c_min);
    EXPECT_EQ(rows[i].stats.c_avg, r.sets[i].stats.c_avg);
    EXPECT_EQ(rows[i].stats.cv_percent, r.sets[i].stats.cv_percent);
  }
}

TEST(RunBatch, StatisticsAndCurves) {
  const ProblemInstance inst = testing::plc_io_instance(15, 3);
  const BatchResult r = run_batch(small_spec(kTableSets, 25, 4), inst, 1);
  for (const SetResult& s : r.sets) {
    ASSERT_EQ(s.final_costs.size(), 4u);
    ASSERT_EQ(s.mean_curve.size(), 25u);
    const CostStats recomputed = summarize(s.final_costs);
    EXPECT_EQ(s.stats.c_min, recomputed.c_min);
    EXPECT_EQ(s.stats.c_min,
              *std::min_element(s.final_costs.begin(), s.final_costs.end()));
    for (std::size_t i = 1; i < s.mean_curve.size(); ++i) {
      EXPECT_LE(s.mean_curve[i], s.mean_curve[i - 1]);
      EXPECT_LE(s.best_run_curve[i], s.best_run_curve[i - 1]);
    }
    EXPECT_EQ(s.best_run_curve.back(), s.stats.c_min);
  }
}

TEST(RunBatch, IndependentOfThreadCount) {
  const ProblemInstance inst = testing::plc_io_instance(15, 3);
  const ExperimentSpec spec = small_spec(kTableSets, 15, 5);
  const BatchResult a = run_batch(spec, inst, 1);
  const BatchResult b = run_batch(spec, inst, 4);
  EXPECT_EQ(summary_csv(a), summary_csv(b));
  EXPECT_EQ(convergence_csv(a), convergence_csv(b));
}

TEST(RunBatch, SeedsDifferPerSetAndRun) {
  std::set<std::uint64_t> seeds;
  for (std::size_t set = 0; set < 4; ++set)
    for (std::size_t run = 0; run < 30; ++run)
      seeds.insert(run_seed(1, set, run));
  EXPECT_EQ(seeds.size(), 120u);
}

TEST(RunBatch, RejectsInvalidSpecs) {
  const ProblemInstance inst = testing::instance_t1();
  EXPECT_THROW(run_batch(small_spec({}, 5, 1), inst, 1), Error);
  EXPECT_THROW(run_batch(small_spec(kTableSets, 5, 0), inst, 1), Error);
  EXPECT_THROW(
      run_batch(small_spec({{"x", "2.0", "1.0", "n"}}, 5, 1), inst, 1), Error);
  EXPECT_THROW(
      run_batch(small_spec({{"x", "2 +", "1.0", "0.25"}}, 5, 1), inst, 1),
      Error);
}

TEST(Manifest, ParsesGeneratorInstance) {
  const ExperimentSpec spec = parse_manifest(R"json({
    "instance": {"profile": "random", "u": 5, "a": 200, "s": 4, "seed": 1},
    "sets": [{"label": "3", "alpha": "2/(n + 0.01)", "beta": "0.1n", "rho": "0.25"}],
    "runs": 30, "ants": 20, "iterations": 500, "seed": 1, "local_search": true
  })json");
  EXPECT_FALSE(spec.instance.path);
  EXPECT_EQ(spec.instance.settings.num_types, 5);
  EXPECT_EQ(spec.instance.settings.num_loops, 200);
  EXPECT_EQ(spec.instance.settings.levels, 4);
  EXPECT_EQ(spec.instance.seed, 1u);
  ASSERT_EQ(spec.sets.size(), 1u);
  EXPECT_EQ(spec.sets[0].beta, "0.1n");
  EXPECT_EQ(spec.runs, 30);
  EXPECT_EQ(spec.instance.load(),
            generate_instance(spec.instance.settings, 1));
}

TEST(Manifest, ResolvesRelativeInstancePath) {
  const ExperimentSpec spec = parse_manifest(
      R"({"instance": "t1.json", "sets": [{"label": "a", "alpha": "1",
          "beta": "1", "rho": "0.5"}]})",
      "/data/dir");
  ASSERT_TRUE(spec.instance.path);
  EXPECT_EQ(*spec.instance.path, "/data/dir/t1.json");
  EXPECT_EQ(spec.runs, 30);
  EXPECT_EQ(spec.iterations, 500);
}

TEST(Manifest, Errors) {
  EXPECT_THROW(parse_manifest("{"), SyntaxError);
  EXPECT_THROW(parse_manifest(R"({"sets": []})"), SchemaError);
  EXPECT_THROW(parse_manifest(R"({"instance": "x", "sets": [], "extra": 1})"),
               SchemaError);
  EXPECT_THROW(parse_manifest(R"({"instance": "x", "sets": [{"label": "a,b",
      "alpha": "1", "beta": "1", "rho": "0.5"}]})"),
               SchemaError);
  EXPECT_THROW(parse_manifest(R"({"instance": "x", "sets": [{"label": "a",
      "alpha": "1", "beta": "1"}]})"),
               SchemaError);
  EXPECT_THROW(parse_manifest(R"({"instance": "x", "sets": [], "runs": 1.5})"),
               SchemaError);
}

TEST(Manifest, WritesCsvFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "dcssp_experiment_test";
  std::filesystem::create_directories(dir);
  const ProblemInstance inst = testing::plc_io_instance(10, 3);
  const BatchResult r = run_batch(small_spec({kTableSets[1]}, 3, 2), inst, 1);
  write_summary_csv(r, (dir / "s.csv").string());
  write_convergence_csv(r, (dir / "c.csv").string());
  EXPECT_EQ(read_file((dir / "s.csv").string()), summary_csv(r));
  EXPECT_EQ(read_file((dir / "c.csv").string()), convergence_csv(r));
  EXPECT_THROW(write_summary_csv(r, (dir / "missing" / "s.csv").string()),
               Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace dcssp
