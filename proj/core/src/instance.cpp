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

#include "dcssp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "dcssp/errors.hpp"
#include "dcssp/text.hpp"
#include "json.hpp"

namespace dcssp {

using Json = nlohmann::ordered_json;

std::string_view to_string(DeviceMode mode) {
  return mode == DeviceMode::kProcessor ? "processor" : "repeater";
}

int ProblemInstance::max_fanout() const {
  int m = 0;
  for (const auto& d : devices) m = std::max(m, d.max_children);
  return m;
}

long ProblemInstance::total_signals() const {
  long total = 0;
  for (const auto& l : loops) total += l.signals;
  return total;
}

namespace {

std::string index_path(std::string_view array, std::size_t i,
                       std::string_view field) {
  return std::string(array) + "[" + std::to_string(i) + "]." +
         std::string(field);
}

}  // namespace

std::vector<InstanceViolation> validate_instance(const ProblemInstance& inst) {
  std::vector<InstanceViolation> out;
  auto add = [&](std::string rule, std::string path, std::string message) {
    out.push_back({std::move(rule), std::move(path), std::move(message)});
  };

  if (inst.devices.empty()) add("U ≥ 1", "devices", "no device types");
  if (inst.loops.empty()) add("A ≥ 1", "loops", "no control loops");

  bool any_processor = false;
  for (std::size_t i = 0; i < inst.devices.size(); ++i) {
    const DeviceType& d = inst.devices[i];
    any_processor |= d.is_processor();
    if (d.id != static_cast<int>(i) + 1)
      add("DeviceType.id dense", index_path("devices", i, "id"),
          "device ids must be 1..U in order");
    if (!(d.cost > 0) || !std::isfinite(d.cost))
      add("DeviceType.cost > 0", index_path("devices", i, "cost"),
          "cost must be positive");
    if (!(d.instr_time > 0) || !std::isfinite(d.instr_time))
      add("DeviceType.instr_time > 0", index_path("devices", i, "instr_time"),
          "instr_time must be positive");
    if (d.is_processor() ? !(d.memory > 0) : !(d.memory >= 0))
      add("DeviceType.memory > 0", index_path("devices", i, "memory"),
          "processor memory must be positive");
    if (!(d.fail_prob >= 0.0 && d.fail_prob <= 1.0))
      add("DeviceType.fail_prob in [0,1]",
          index_path("devices", i, "fail_prob"), "fail_prob out of [0,1]");
    if (d.channels < 0)
      add("DeviceType.channels ≥ 0", index_path("devices", i, "channels"),
          "channels must be non-negative");
    if (d.max_children < 0)
      add("DeviceType.max_children ≥ 0",
          index_path("devices", i, "max_children"),
          "max_children must be non-negative");
    if (!(d.relay_delay >= 0) || !std::isfinite(d.relay_delay))
      add("DeviceType.relay_delay ≥ 0",
          index_path("devices", i, "relay_delay"),
          "relay_delay must be non-negative");
  }
  if (!inst.devices.empty() && !any_processor)
    add("at least one Processor type", "devices", "no processor device type");

  for (std::size_t j = 0; j < inst.loops.size(); ++j) {
    const ControlLoop& l = inst.loops[j];
    if (l.id != static_cast<int>(j) + 1)
      add("ControlLoop.id dense", index_path("loops", j, "id"),
          "loop ids must be 1..A in order");
    if (l.signals < 1)
      add("ControlLoop.signals ≥ 1", index_path("loops", j, "signals"),
          "signals must be at least 1");
    if (!(l.mem_demand > 0) || !std::isfinite(l.mem_demand))
      add("ControlLoop.mem_demand > 0", index_path("loops", j, "mem_demand"),
          "mem_demand must be positive");
    if (l.instr_count < 1)
      add("ControlLoop.instr_count ≥ 1", index_path("loops", j, "instr_count"),
          "instr_count must be at least 1");
  }

  const GlobalLimits& g = inst.limits;
  if (g.levels < 1) add("S ≥ 1", "limits.levels", "levels must be at least 1");
  if (!(g.min_loop_reliability >= 0.0 && g.min_loop_reliability <= 1.0))
    add("min_loop_reliability in [0,1]", "limits.min_loop_reliability",
        "min_loop_reliability out of [0,1]");
  if (!(g.max_cycle_time >= 0))
    add("max_cycle_time ≥ 0", "limits.max_cycle_time",
        "max_cycle_time must be non-negative");
  if (!(g.max_loop_delay >= 0))
    add("max_loop_delay ≥ 0", "limits.max_loop_delay",
        "max_loop_delay must be non-negative");
  return out;
}

// ---------------------------------------------------------------------------
// JSON document reading.

namespace {

void position_of(std::string_view text, std::size_t byte, std::size_t& line,
                 std::size_t& column) {
  line = 1;
  column = 1;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i + 1 < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

void require_keys(const Json& obj, const std::string& where,
                  std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) throw SchemaError(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
      throw SchemaError(where + "." + it.key(), "unknown key");
  }
  for (std::string_view k : keys) {
    if (!obj.contains(std::string(k)))
      throw SchemaError(where + "." + std::string(k), "missing key");
  }
}

double get_real(const Json& obj, const std::string& where, const char* key) {
  const Json& v = obj.at(key);
  if (!v.is_number())
    throw SchemaError(where + "." + key, "expected a number");
  return v.get<double>();
}

int get_int(const Json& obj, const std::string& where, const char* key) {
  const Json& v = obj.at(key);
  if (!v.is_number_integer())
    throw SchemaError(where + "." + key, "expected an integer");
  const auto x = v.get<long long>();
  if (x < -(1LL << 30) || x > (1LL << 30))
    throw SchemaError(where + "." + key, "integer out of range");
  return static_cast<int>(x);
}

}  // namespace

ProblemInstance parse_instance_unvalidated(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 0, column = 0;
    position_of(text, e.byte, line, column);
    throw SyntaxError("invalid JSON", line, column);
  }

  require_keys(doc, "instance", {"devices", "loops", "limits"});
  ProblemInstance inst;

  const Json& devices = doc.at("devices");
  if (!devices.is_array()) throw SchemaError("devices", "expected an array");
  for (std::size_t i = 0; i < devices.size(); ++i) {
    const std::string where = "devices[" + std::to_string(i) + "]";
    const Json& d = devices[i];
    require_keys(d, where,
                 {"cost", "channels", "memory", "fail_prob", "instr_time",
                  "mode", "max_children", "relay_delay"});
    DeviceType t;
    t.id = static_cast<int>(i) + 1;
    t.cost = get_real(d, where, "cost");
    t.channels = get_int(d, where, "channels");
    t.memory = get_real(d, where, "memory");
    t.fail_prob = get_real(d, where, "fail_prob");
    t.instr_time = get_real(d, where, "instr_time");
    const Json& mode = d.at("mode");
    if (mode == "processor") {
      t.mode = DeviceMode::kProcessor;
    } else if (mode == "repeater") {
      t.mode = DeviceMode::kRepeater;
    } else {
      throw SchemaError(where + ".mode", "expected \"processor\" or \"repeater\"");
    }
    t.max_children = get_int(d, where, "max_children");
    t.relay_delay = get_real(d, where, "relay_delay");
    inst.devices.push_back(t);
  }

  const Json& loops = doc.at("loops");
  if (!loops.is_array()) throw SchemaError("loops", "expected an array");
  for (std::size_t j = 0; j < loops.size(); ++j) {
    const std::string where = "loops[" + std::to_string(j) + "]";
    const Json& l = loops[j];
    require_keys(l, where, {"signals", "mem_demand", "instr_count"});
    ControlLoop loop;
    loop.id = static_cast<int>(j) + 1;
    loop.signals = get_int(l, where, "signals");
    loop.mem_demand = get_real(l, where, "mem_demand");
    loop.instr_count = get_int(l, where, "instr_count");
    inst.loops.push_back(loop);
  }

  const Json& limits = doc.at("limits");
  require_keys(limits, "limits",
               {"levels", "max_cycle_time", "min_loop_reliability",
                "max_loop_delay"});
  inst.limits.levels = get_int(limits, "limits", "levels");
  inst.limits.max_cycle_time = get_real(limits, "limits", "max_cycle_time");
  inst.limits.min_loop_reliability =
      get_real(limits, "limits", "min_loop_reliability");
  inst.limits.max_loop_delay = get_real(limits, "limits", "max_loop_delay");
  return inst;
}

ProblemInstance parse_instance(std::string_view text) {
  ProblemInstance inst = parse_instance_unvalidated(text);
  const auto violations = validate_instance(inst);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw InvariantError(v.path + ": " + v.message + " (" + v.rule + ")");
  }
  return inst;
}

std::string serialize_instance(const ProblemInstance& inst) {
  Json doc;
  doc["devices"] = Json::array();
  for (const auto& d : inst.devices) {
    Json o;
    o["cost"] = d.cost;
    o["channels"] = d.channels;
    o["memory"] = d.memory;
    o["fail_prob"] = d.fail_prob;
    o["instr_time"] = d.instr_time;
    o["mode"] = std::string(to_string(d.mode));
    o["max_children"] = d.max_children;
    o["relay_delay"] = d.relay_delay;
    doc["devices"].push_back(std::move(o));
  }
  doc["loops"] = Json::array();
  for (const auto& l : inst.loops) {
    Json o;
    o["signals"] = l.signals;
    o["mem_demand"] = l.mem_demand;
    o["instr_count"] = l.instr_count;
    doc["loops"].push_back(std::move(o));
  }
  Json limits;
  limits["levels"] = inst.limits.levels;
  limits["max_cycle_time"] = inst.limits.max_cycle_time;
  limits["min_loop_reliability"] = inst.limits.min_loop_reliability;
  limits["max_loop_delay"] = inst.limits.max_loop_delay;
  doc["limits"] = std::move(limits);
  return doc.dump(2) + "\n";
}

ProblemInstance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

}  // namespace dcssp
