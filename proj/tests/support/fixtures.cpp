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

#include "support/fixtures.hpp"

#include "dcssp/rng.hpp"

namespace dcssp::testing {

DeviceType plc_device() {
  DeviceType d;
  d.id = 1;
  d.cost = 100.0;
  d.channels = 0;
  d.memory = 1000.0;
  d.fail_prob = 0.001;
  d.instr_time = 1e-6;
  d.mode = DeviceMode::kProcessor;
  d.max_children = 4;
  d.relay_delay = 0.0;
  return d;
}

DeviceType io_device() {
  DeviceType d;
  d.id = 2;
  d.cost = 10.0;
  d.channels = 8;
  d.memory = 0.0;
  d.fail_prob = 0.002;
  d.instr_time = 1e-5;
  d.mode = DeviceMode::kRepeater;
  d.max_children = 4;
  d.relay_delay = 0.002;
  return d;
}

GlobalLimits permissive_limits(int levels) {
  return GlobalLimits{levels, 0.01, 0.99, 0.01};
}

ProblemInstance instance_t0() {
  ProblemInstance inst;
  DeviceType d = plc_device();
  d.cost = 50.0;
  d.channels = 8;
  d.max_children = 0;
  inst.devices = {d};
  inst.loops = {ControlLoop{1, 4, 10.0, 100}};
  inst.limits = permissive_limits(1);
  return inst;
}

ProblemInstance instance_t1() {
  ProblemInstance inst;
  inst.devices = {plc_device(), io_device()};
  inst.loops = {ControlLoop{1, 4, 5.0, 200}, ControlLoop{2, 4, 5.0, 200}};
  inst.limits = permissive_limits(2);
  return inst;
}

ProblemInstance instance_f1() {
  ProblemInstance inst;
  inst.devices = {plc_device(), io_device()};
  inst.loops = {ControlLoop{1, 5, 10.0, 300}, ControlLoop{2, 3, 20.0, 200},
                ControlLoop{3, 6, 15.0, 400}};
  inst.limits = permissive_limits(2);
  return inst;
}

Solution solution_f1() {
  Solution sol;
  sol.nodes = {Node{0, 1, 1, std::nullopt, {1, 2}}, Node{1, 2, 2, 0, {}},
               Node{2, 2, 2, 0, {}}};
  sol.placements = {LoopPlacement{1, 1, 0}, LoopPlacement{2, 1, 0},
                    LoopPlacement{3, 2, 0}};
  return sol;
}

ProblemInstance tiny_random_instance(std::uint64_t seed, int max_types,
                                     int max_loops, int max_levels) {
  Rng rng(mix64(seed));
  GeneratorSettings g;
  g.num_types = static_cast<int>(rng.uniform_int(1, max_types));
  g.num_loops = static_cast<int>(rng.uniform_int(1, max_loops));
  g.levels = static_cast<int>(rng.uniform_int(1, max_levels));
  g.max_children = {1.0, 3.0};
  return generate_instance(g, seed);
}

ProblemInstance plc_io_instance(int loops, int levels, std::uint64_t seed) {
  GeneratorSettings g;
  g.profile = GeneratorProfile::kPlcIo;
  g.num_types = 2;
  g.num_loops = loops;
  g.levels = levels;
  return generate_instance(g, seed);
}

}  // namespace dcssp::testing
