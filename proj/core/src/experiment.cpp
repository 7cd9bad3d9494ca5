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

#include "dcssp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "dcssp/errors.hpp"
#include "dcssp/rng.hpp"
#include "dcssp/text.hpp"
#include "json.hpp"

namespace dcssp {

using Json = nlohmann::ordered_json;

ProblemInstance InstanceSource::load() const {
  if (path) return load_instance(*path);
  return generate_instance(settings, seed);
}

void validate_spec(const ExperimentSpec& spec) {
  if (spec.sets.empty()) throw Error("experiment needs at least one parameter set");
  if (spec.runs < 1) throw Error("runs must be at least 1");
  if (spec.ants < 1) throw Error("ants must be at least 1");
  if (spec.iterations < 1) throw Error("iterations must be at least 1");
  for (const ParamSet& set : spec.sets) {
    const std::pair<const std::string*, ScheduleRole> parts[] = {
        {&set.rho, ScheduleRole::kRho},
        {&set.alpha, ScheduleRole::kAlpha},
        {&set.beta, ScheduleRole::kBeta}};
    for (const auto& [text, role] : parts) {
      ScheduleExpr expr = ScheduleExpr::constant(0);
      try {
        expr = parse_schedule(*text);
      } catch (const ScheduleSyntaxError& e) {
        throw Error("set '" + set.label + "': " + std::string(to_string(role)) +
                    ": " + e.what());
      }
      const auto bad = validate_schedule_range(expr, spec.iterations, role);
      if (!bad.empty())
        throw Error("set '" + set.label + "': " + bad.front().message);
    }
  }
}

CostStats summarize(std::span<const double> costs) {
  if (costs.empty()) throw Error("no costs to summarize");
  CostStats s;
  s.c_min = *std::min_element(costs.begin(), costs.end());
  double sum = 0.0;
  for (double c : costs) sum += c;
  s.c_avg = sum / static_cast<double>(costs.size());
  if (!std::isfinite(s.c_avg)) {
    s.cv_percent = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  if (costs.size() < 2) {
    s.cv_percent = 0.0;
    return s;
  }
  double ss = 0.0;
  for (double c : costs) ss += (c - s.c_avg) * (c - s.c_avg);
  const double sd = std::sqrt(ss / static_cast<double>(costs.size() - 1));
  s.cv_percent = 100.0 * sd / s.c_avg;
  return s;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t set,
                       std::size_t run) {
  return derive_seed(base_seed, 0x5e7 + set, run);
}

BatchResult run_batch(const ExperimentSpec& spec, const ProblemInstance& inst,
                      unsigned threads) {
  validate_spec(spec);
  const std::size_t n_sets = spec.sets.size();
  const auto n_runs = static_cast<std::size_t>(spec.runs);

  std::vector<AcoParams> params(n_sets);
  for (std::size_t s = 0; s < n_sets; ++s) {
    params[s].n_ants = spec.ants;
    params[s].n_iterations = spec.iterations;
    params[s].alpha = parse_schedule(spec.sets[s].alpha);
    params[s].beta = parse_schedule(spec.sets[s].beta);
    params[s].rho = parse_schedule(spec.sets[s].rho);
    params[s].local_search = spec.local_search;
  }

  // Results are written by task index, so worker scheduling cannot change
  // the output.
  std::vector<RunResult> runs(n_sets * n_runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&]() {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= runs.size()) return;
      const std::size_t s = task / n_runs;
      const std::size_t r = task % n_runs;
      try {
        AcoParams p = params[s];
        p.seed = run_seed(spec.base_seed, s, r);
        runs[task] = run_aco(inst, p);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(runs.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  BatchResult out;
  for (std::size_t s = 0; s < n_sets; ++s) {
    SetResult set;
    set.params = spec.sets[s];
    set.mean_curve.assign(spec.iterations, 0.0);
    std::size_t best_run = 0;
    for (std::size_t r = 0; r < n_runs; ++r) {
      const RunResult& run = runs[s * n_runs + r];
      set.final_costs.push_back(run.best_cost);
      if (run.best_cost < runs[s * n_runs + best_run].best_cost) best_run = r;
      for (int i = 0; i < spec.iterations; ++i)
        set.mean_curve[i] += run.trace[i].best_so_far;
    }
    for (double& v : set.mean_curve) v /= static_cast<double>(n_runs);
    for (const auto& rec : runs[s * n_runs + best_run].trace)
      set.best_run_curve.push_back(rec.best_so_far);
    set.stats = summarize(set.final_costs);
    out.sets.push_back(std::move(set));
  }
  return out;
}

BatchResult run_batch(const ExperimentSpec& spec, unsigned threads) {
  return run_batch(spec, spec.instance.load(), threads);
}

namespace {

const Json& need(const Json& obj, const char* key) {
  if (!obj.contains(key)) throw SchemaError(key, "missing key");
  return obj.at(key);
}

int need_int(const Json& obj, const char* key) {
  const Json& v = need(obj, key);
  if (!v.is_number_integer()) throw SchemaError(key, "expected an integer");
  return v.get<int>();
}

void check_label(const std::string& text, const std::string& field) {
  if (text.find_first_of(",\"\n\r") != std::string::npos)
    throw SchemaError(field, "must not contain commas, quotes or newlines");
}

GeneratorSettings parse_generator(const Json& obj, std::uint64_t& seed) {
  static constexpr std::string_view kKeys[] = {"profile", "u", "a", "s",
                                               "seed"};
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find(std::begin(kKeys), std::end(kKeys), it.key()) ==
        std::end(kKeys))
      throw SchemaError("instance." + it.key(), "unknown key");
  GeneratorSettings g;
  if (obj.contains("profile")) {
    if (!obj["profile"].is_string())
      throw SchemaError("instance.profile", "expected a string");
    g.profile = parse_profile(obj["profile"].get<std::string>());
  }
  if (obj.contains("u")) g.num_types = need_int(obj, "u");
  if (obj.contains("a")) g.num_loops = need_int(obj, "a");
  if (obj.contains("s")) g.levels = need_int(obj, "s");
  if (obj.contains("seed")) {
    if (!obj["seed"].is_number_unsigned())
      throw SchemaError("instance.seed", "expected a non-negative integer");
    seed = obj["seed"].get<std::uint64_t>();
  }
  return g;
}

}  // namespace

ExperimentSpec parse_manifest(std::string_view text,
                              const std::string& base_dir) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SyntaxError("invalid JSON", line, column);
  }
  if (!doc.is_object()) throw SchemaError("manifest", "expected an object");
  static constexpr std::string_view kKeys[] = {
      "instance", "sets", "runs", "ants", "iterations", "seed", "local_search"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (std::find(std::begin(kKeys), std::end(kKeys), it.key()) ==
        std::end(kKeys))
      throw SchemaError(it.key(), "unknown key");

  ExperimentSpec spec;
  const Json& inst = need(doc, "instance");
  if (inst.is_string()) {
    std::filesystem::path p(inst.get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    spec.instance.path = p.string();
  } else if (inst.is_object()) {
    spec.instance.settings = parse_generator(inst, spec.instance.seed);
  } else {
    throw SchemaError("instance", "expected a path or generator settings");
  }

  const Json& sets = need(doc, "sets");
  if (!sets.is_array()) throw SchemaError("sets", "expected an array");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::string where = "sets[" + std::to_string(i) + "]";
    const Json& s = sets[i];
    if (!s.is_object()) throw SchemaError(where, "expected an object");
    ParamSet set;
    for (auto it = s.begin(); it != s.end(); ++it) {
      if (!it.value().is_string())
        throw SchemaError(where + "." + it.key(), "expected a string");
      const std::string v = it.value().get<std::string>();
      if (it.key() == "label") {
        set.label = v;
      } else if (it.key() == "alpha") {
        set.alpha = v;
      } else if (it.key() == "beta") {
        set.beta = v;
      } else if (it.key() == "rho") {
        set.rho = v;
      } else {
        throw SchemaError(where + "." + it.key(), "unknown key");
      }
      check_label(v, where + "." + it.key());
    }
    for (const char* k : {"label", "alpha", "beta", "rho"})
      if (!s.contains(k)) throw SchemaError(where + "." + k, "missing key");
    spec.sets.push_back(std::move(set));
  }
  if (doc.contains("runs")) spec.runs = need_int(doc, "runs");
  if (doc.contains("ants")) spec.ants = need_int(doc, "ants");
  if (doc.contains("iterations")) spec.iterations = need_int(doc, "iterations");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned())
      throw SchemaError("seed", "expected a non-negative integer");
    spec.base_seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("local_search")) {
    if (!doc["local_search"].is_boolean())
      throw SchemaError("local_search", "expected a boolean");
    spec.local_search = doc["local_search"].get<bool>();
  }
  validate_spec(spec);
  return spec;
}

ExperimentSpec load_manifest(const std::string& path) {
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_manifest(read_file(path), dir.empty() ? "." : dir.string());
}

std::string convergence_csv(const BatchResult& result) {
  std::string out = "set_label,iteration,mean_best_so_far,best_run_best_so_far\n";
  for (const SetResult& set : result.sets) {
    for (std::size_t i = 0; i < set.mean_curve.size(); ++i) {
      out += set.params.label + "," + std::to_string(i + 1) + "," +
             format_number(set.mean_curve[i]) + "," +
             format_number(set.best_run_curve[i]) + "\n";
    }
  }
  return out;
}

std::string summary_csv(const BatchResult& result) {
  std::string out = "set_label,rho,alpha,beta,c_min,c_avg,cv_percent\n";
  for (const SetResult& set : result.sets) {
    out += set.params.label + "," + set.params.rho + "," + set.params.alpha +
           "," + set.params.beta + "," + format_number(set.stats.c_min) + "," +
           format_number(set.stats.c_avg) + "," +
           format_number(set.stats.cv_percent) + "\n";
  }
  return out;
}

void write_convergence_csv(const BatchResult& result, const std::string& path) {
  write_file(path, convergence_csv(result));
}

void write_summary_csv(const BatchResult& result, const std::string& path) {
  write_file(path, summary_csv(result));
}

namespace {

double parse_double(std::string_view s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error("malformed number '" + std::string(s) + "' in CSV");
  return v;
}

}  // namespace

std::vector<SummaryRow> parse_summary_csv(std::string_view text) {
  std::vector<SummaryRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) ||
      line != "set_label,rho,alpha,beta,c_min,c_avg,cv_percent")
    throw Error("unexpected summary CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cells.size() != 7) throw Error("summary CSV row needs 7 cells");
    rows.push_back({cells[0], cells[1], cells[2], cells[3],
                    {parse_double(cells[4]), parse_double(cells[5]),
                     parse_double(cells[6])}});
  }
  return rows;
}

}  // namespace dcssp
