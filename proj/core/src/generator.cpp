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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dcssp/errors.hpp"
#include "dcssp/instance.hpp"
#include "dcssp/rng.hpp"

namespace dcssp {

GeneratorProfile parse_profile(std::string_view name) {
  if (name == "random") return GeneratorProfile::kRandom;
  if (name == "plc-io") return GeneratorProfile::kPlcIo;
  throw Error("unknown generator profile '" + std::string(name) + "'");
}

std::string_view to_string(GeneratorProfile profile) {
  return profile == GeneratorProfile::kPlcIo ? "plc-io" : "random";
}

namespace {

void check_range(const Range& r, const char* name, double floor_value) {
  if (!(r.lo <= r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
    throw Error(std::string("generator range '") + name + "' is empty");
  if (r.lo < floor_value)
    throw Error(std::string("generator range '") + name + "' below " +
                std::to_string(floor_value));
}

int draw_int(Rng& rng, const Range& r) {
  const auto lo = static_cast<std::int64_t>(std::ceil(r.lo));
  const auto hi = static_cast<std::int64_t>(std::floor(r.hi));
  if (lo > hi) throw Error("generator integer range contains no integer");
  return static_cast<int>(rng.uniform_int(lo, hi));
}

std::vector<ControlLoop> draw_loops(const GeneratorSettings& s, Rng& rng) {
  std::vector<ControlLoop> loops;
  loops.reserve(s.num_loops);
  for (int j = 0; j < s.num_loops; ++j) {
    ControlLoop l;
    l.id = j + 1;
    l.signals = draw_int(rng, s.loop_signals);
    l.mem_demand = rng.uniform(s.loop_memory.lo, s.loop_memory.hi);
    l.instr_count = draw_int(rng, s.loop_instructions);
    loops.push_back(l);
  }
  return loops;
}

ProblemInstance plc_io(const GeneratorSettings& s, Rng& rng) {
  ProblemInstance inst;
  DeviceType plc;
  plc.id = 1;
  plc.cost = 100.0;
  plc.channels = 0;
  plc.memory = 1000.0;
  plc.fail_prob = 0.001;
  plc.instr_time = 1e-6;
  plc.mode = DeviceMode::kProcessor;
  plc.max_children = 4;
  plc.relay_delay = 0.0;

  DeviceType io;
  io.id = 2;
  io.cost = 10.0;
  io.channels = 8;
  io.memory = 0.0;
  io.fail_prob = 0.002;
  io.instr_time = 1e-5;
  io.mode = DeviceMode::kRepeater;
  io.max_children = 4;
  io.relay_delay = 0.002;

  inst.devices = {plc, io};
  inst.loops = draw_loops(s, rng);

  long total_instr = 0;
  for (const auto& l : inst.loops) total_instr += l.instr_count;
  inst.limits.levels = s.levels;
  inst.limits.max_cycle_time = std::max(0.1, plc.instr_time * total_instr);
  inst.limits.min_loop_reliability = 0.99;
  inst.limits.max_loop_delay = 0.01;
  return inst;
}

ProblemInstance random_profile(const GeneratorSettings& s, Rng& rng) {
  check_range(s.processor_cost, "processor_cost", 1e-12);
  check_range(s.repeater_cost, "repeater_cost", 1e-12);
  check_range(s.processor_channels, "processor_channels", 0.0);
  check_range(s.repeater_channels, "repeater_channels", 0.0);
  check_range(s.processor_memory, "processor_memory", 1e-12);
  check_range(s.fail_prob, "fail_prob", 0.0);
  check_range(s.instr_time, "instr_time", 1e-15);
  check_range(s.max_children, "max_children", 0.0);
  check_range(s.repeater_delay, "repeater_delay", 0.0);
  if (s.fail_prob.hi > 1.0) throw Error("generator range 'fail_prob' above 1");

  ProblemInstance inst;
  const int u = s.num_types;
  for (int i = 1; i <= u; ++i) {
    DeviceType d;
    d.id = i;
    bool processor;
    if (i == 1) {
      processor = true;
    } else if (i == 2) {
      processor = false;
    } else {
      processor = rng.uniform01() < 0.5;
    }
    d.mode = processor ? DeviceMode::kProcessor : DeviceMode::kRepeater;
    if (processor) {
      d.cost = rng.uniform(s.processor_cost.lo, s.processor_cost.hi);
      d.channels = draw_int(rng, s.processor_channels);
      d.memory = rng.uniform(s.processor_memory.lo, s.processor_memory.hi);
      d.instr_time = rng.uniform(s.instr_time.lo, s.instr_time.hi);
      d.relay_delay = rng.uniform(0.0, s.repeater_delay.lo);
    } else {
      d.cost = rng.uniform(s.repeater_cost.lo, s.repeater_cost.hi);
      d.channels = draw_int(rng, s.repeater_channels);
      d.memory = 0.0;
      d.instr_time = s.instr_time.hi;
      d.relay_delay = rng.uniform(s.repeater_delay.lo, s.repeater_delay.hi);
    }
    d.fail_prob = rng.uniform(s.fail_prob.lo, s.fail_prob.hi);
    d.max_children = draw_int(rng, s.max_children);
    inst.devices.push_back(d);
  }
  inst.loops = draw_loops(s, rng);

  const int levels = s.levels;
  long total_signals = 0;
  long total_instr = 0;
  double total_memory = 0.0;
  double max_loop_memory = 0.0;
  int max_signals = 0;
  int max_instr = 0;
  for (const auto& l : inst.loops) {
    total_signals += l.signals;
    total_instr += l.instr_count;
    total_memory += l.mem_demand;
    max_loop_memory = std::max(max_loop_memory, l.mem_demand);
    max_signals = std::max(max_signals, l.signals);
    max_instr = std::max(max_instr, l.instr_count);
  }

  // Device 1 alone must be able to form a feasible tree in which every leaf
  // is a controller serving one loop.
  DeviceType& anchor = inst.devices[0];
  if (levels == 1) {
    anchor.channels = std::max<long>(anchor.channels, total_signals);
    anchor.memory = std::max(anchor.memory, total_memory);
  } else {
    anchor.channels = std::max(anchor.channels, max_signals);
    anchor.memory = std::max(anchor.memory, max_loop_memory);
    anchor.max_children = std::max(anchor.max_children, 1);
    auto leaves = [&](int m) {
      double n = 1.0;
      for (int l = 1; l < levels; ++l) n *= m;
      return n;
    };
    while (leaves(anchor.max_children) < inst.loops.size() &&
           anchor.max_children < 64) {
      ++anchor.max_children;
    }
  }

  // Scale channels so that a tree of typical size (every node drawing a
  // mid-range child count) offers 1.5 times the total signal count.
  if (levels > 1) {
    double mean_ports = 0.0;
    double mean_channels = 0.0;
    for (const auto& d : inst.devices) {
      mean_ports += d.max_children;
      mean_channels += d.channels;
    }
    mean_ports /= u;
    mean_channels = std::max(mean_channels / u, 1.0);
    const double typical_leaves =
        std::pow((mean_ports + 1.0) / 2.0, levels - 1);
    const double scale =
        1.5 * static_cast<double>(total_signals) /
        (typical_leaves * mean_channels);
    if (scale > 1.0)
      for (auto& d : inst.devices)
        d.channels = static_cast<int>(std::ceil(d.channels * scale));
  }

  // The fastest controller type can host the whole plant on its own.
  DeviceType* fastest = &anchor;
  for (auto& d : inst.devices)
    if (d.is_processor() && d.instr_time < fastest->instr_time) fastest = &d;
  fastest->memory = std::max(fastest->memory, total_memory);

  GlobalLimits& g = inst.limits;
  g.levels = levels;
  g.max_cycle_time =
      std::max(anchor.instr_time * (levels == 1 ? total_instr : max_instr),
               fastest->instr_time * static_cast<double>(total_instr));
  g.min_loop_reliability =
      std::pow(1.0 - s.fail_prob.hi, std::ceil((levels + 1) / 2.0));
  g.max_loop_delay = s.repeater_delay.hi * std::ceil((levels - 1) / 2.0);
  return inst;
}

}  // namespace

ProblemInstance generate_instance(const GeneratorSettings& settings,
                                  std::uint64_t seed) {
  if (settings.num_types < 1) throw Error("generator needs U ≥ 1");
  if (settings.num_loops < 1) throw Error("generator needs A ≥ 1");
  if (settings.levels < 1) throw Error("generator needs S ≥ 1");
  check_range(settings.loop_signals, "loop_signals", 1.0);
  check_range(settings.loop_memory, "loop_memory", 1e-12);
  check_range(settings.loop_instructions, "loop_instructions", 1.0);

  Rng rng(seed);
  ProblemInstance inst = settings.profile == GeneratorProfile::kPlcIo
                             ? plc_io(settings, rng)
                             : random_profile(settings, rng);
  const auto violations = validate_instance(inst);
  if (!violations.empty())
    throw Error("generated instance is invalid: " + violations.front().message);
  return inst;
}

}  // namespace dcssp
