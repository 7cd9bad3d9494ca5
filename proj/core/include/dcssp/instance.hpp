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

#ifndef DCSSP_INSTANCE_HPP_
#define DCSSP_INSTANCE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dcssp {

enum class DeviceMode { kProcessor, kRepeater };

std::string_view to_string(DeviceMode mode);

// One purchasable device model. Ids are dense and 1-based.
struct DeviceType {
  int id = 0;
  double cost = 0.0;          // purchase price
  int channels = 0;           // physical signal inputs at this device
  double memory = 0.0;        // program memory available to loops
  double fail_prob = 0.0;     // probability of device failure
  double instr_time = 0.0;    // seconds per program instruction
  DeviceMode mode = DeviceMode::kProcessor;
  int max_children = 0;       // downstream network ports
  double relay_delay = 0.0;   // seconds added when forwarding signals

  bool is_processor() const { return mode == DeviceMode::kProcessor; }

  friend bool operator==(const DeviceType&, const DeviceType&) = default;
};

// Resource demands of one control loop.
struct ControlLoop {
  int id = 0;
  int signals = 0;          // physical signals, all wired to one leaf
  double mem_demand = 0.0;  // memory for the loop's program and data
  int instr_count = 0;      // instructions per processing cycle

  friend bool operator==(const ControlLoop&, const ControlLoop&) = default;
};

struct GlobalLimits {
  int levels = 1;                     // hierarchy depth S
  double max_cycle_time = 0.0;        // cap on T * sum(w) per processor
  double min_loop_reliability = 0.0;  // floor on per-loop path survival
  double max_loop_delay = 0.0;        // cap on per-loop forwarding delay

  friend bool operator==(const GlobalLimits&, const GlobalLimits&) = default;
};

struct ProblemInstance {
  std::vector<DeviceType> devices;
  std::vector<ControlLoop> loops;
  GlobalLimits limits;

  int num_types() const { return static_cast<int>(devices.size()); }
  int num_loops() const { return static_cast<int>(loops.size()); }
  int levels() const { return limits.levels; }

  // 1-based lookups; ids are validated to be dense.
  const DeviceType& device(int type_id) const { return devices[type_id - 1]; }
  const ControlLoop& loop(int loop_id) const { return loops[loop_id - 1]; }

  int max_fanout() const;
  long total_signals() const;

  friend bool operator==(const ProblemInstance&,
                         const ProblemInstance&) = default;
};

// A broken invariant: `rule` names the invariant, `path` the offending field.
struct InstanceViolation {
  std::string rule;
  std::string path;
  std::string message;

  friend bool operator==(const InstanceViolation&,
                         const InstanceViolation&) = default;
};

std::vector<InstanceViolation> validate_instance(const ProblemInstance& inst);

// Parses and validates an instance document. Throws SyntaxError,
// SchemaError or InvariantError.
ProblemInstance parse_instance(std::string_view text);

// Syntax and schema checks only; invariants are left to validate_instance.
ProblemInstance parse_instance_unvalidated(std::string_view text);

std::string serialize_instance(const ProblemInstance& inst);

ProblemInstance load_instance(const std::string& path);

// ---------------------------------------------------------------------------
// Randomized instance generation.

enum class GeneratorProfile {
  kRandom,
  // Two device types: an expensive controller without I/O channels and a
  // cheap 8-channel I/O module, both with four network ports.
  kPlcIo,
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct GeneratorSettings {
  GeneratorProfile profile = GeneratorProfile::kRandom;
  int num_types = 5;  // U
  int num_loops = 200;  // A
  int levels = 4;  // S

  // Device parameter ranges (random profile).
  Range processor_cost{80.0, 300.0};
  Range repeater_cost{5.0, 40.0};
  Range processor_channels{0.0, 8.0};
  Range repeater_channels{4.0, 16.0};
  Range processor_memory{200.0, 1200.0};
  Range fail_prob{0.0005, 0.005};
  Range instr_time{2e-7, 2e-6};
  Range max_children{2.0, 6.0};
  Range repeater_delay{0.0005, 0.003};

  // Loop parameter ranges (both profiles).
  Range loop_signals{1.0, 3.0};
  Range loop_memory{1.0, 10.0};
  Range loop_instructions{100.0, 1000.0};
};

ProblemInstance generate_instance(const GeneratorSettings& settings,
                                  std::uint64_t seed);

GeneratorProfile parse_profile(std::string_view name);
std::string_view to_string(GeneratorProfile profile);

}  // namespace dcssp

#endif  // DCSSP_INSTANCE_HPP_
