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

#include "dcssp/structure.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "dcssp/text.hpp"
#include "json.hpp"

namespace dcssp {

using Json = nlohmann::ordered_json;

std::string_view constraint_id(Constraint c) {
  static constexpr std::string_view kIds[] = {"C1", "C2", "C3", "C4", "C5",
                                              "C6", "C7", "C8", "C9"};
  return kIds[static_cast<int>(c) - 1];
}

bool FeasibilityReport::has(Constraint c) const {
  return std::any_of(violations.begin(), violations.end(),
                     [c](const Violation& v) { return v.constraint == c; });
}

int Solution::root() const {
  for (const Node& n : nodes)
    if (!n.parent) return n.id;
  return -1;
}

namespace {

// Topology only: dense ids, single root, consistent links, connected and
// acyclic, placements pointing at a leaf and one of its ancestors.
void check_topology(const Solution& sol) {
  const int count = static_cast<int>(sol.nodes.size());
  if (count == 0) throw MalformedSolution("solution has no nodes");
  auto valid = [count](int id) { return id >= 0 && id < count; };

  int root = -1;
  for (int i = 0; i < count; ++i) {
    const Node& n = sol.nodes[i];
    if (n.id != i)
      throw MalformedSolution("node at index " + std::to_string(i) +
                              " has id " + std::to_string(n.id));
    if (!n.parent) {
      if (root >= 0)
        throw MalformedSolution("multiple roots: nodes " +
                                std::to_string(root) + " and " +
                                std::to_string(i));
      root = i;
    } else {
      const int p = *n.parent;
      if (!valid(p))
        throw MalformedSolution("node " + std::to_string(i) +
                                " has dangling parent " + std::to_string(p));
      const auto& siblings = sol.nodes[p].children;
      if (std::find(siblings.begin(), siblings.end(), i) == siblings.end())
        throw MalformedSolution("node " + std::to_string(i) +
                                " is missing from its parent's children");
    }
    for (int c : n.children) {
      if (!valid(c))
        throw MalformedSolution("node " + std::to_string(i) +
                                " has dangling child " + std::to_string(c));
      if (sol.nodes[c].parent != i)
        throw MalformedSolution("node " + std::to_string(c) +
                                " does not point back to parent " +
                                std::to_string(i));
    }
  }
  if (root < 0) throw MalformedSolution("no root (cycle through every node)");

  std::vector<char> seen(count, 0);
  std::deque<int> queue{root};
  seen[root] = 1;
  int visited = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    ++visited;
    for (int c : sol.nodes[v].children) {
      if (seen[c])
        throw MalformedSolution("cycle or shared child at node " +
                                std::to_string(c));
      seen[c] = 1;
      queue.push_back(c);
    }
  }
  if (visited != count)
    throw MalformedSolution("cycle detected: " +
                            std::to_string(count - visited) +
                            " nodes unreachable from the root");

  for (std::size_t j = 0; j < sol.placements.size(); ++j) {
    const LoopPlacement& p = sol.placements[j];
    const std::string tag = "loop " + std::to_string(j + 1);
    if (p.loop != static_cast<int>(j) + 1)
      throw MalformedSolution(tag + " placement carries loop id " +
                              std::to_string(p.loop));
    if (!valid(p.connect_leaf) || !valid(p.process_node))
      throw MalformedSolution(tag + " placement references unknown node");
    if (!sol.nodes[p.connect_leaf].is_leaf())
      throw MalformedSolution(tag + " is connected to non-leaf node " +
                              std::to_string(p.connect_leaf));
    int v = p.connect_leaf;
    while (v != p.process_node && sol.nodes[v].parent) v = *sol.nodes[v].parent;
    if (v != p.process_node)
      throw MalformedSolution(tag + " is processed outside its leaf's path");
  }
}

void check_types(const Solution& sol, const ProblemInstance& inst) {
  for (const Node& n : sol.nodes) {
    if (n.type < 1 || n.type > inst.num_types())
      throw MalformedSolution("node " + std::to_string(n.id) +
                              " has dangling type id " +
                              std::to_string(n.type));
  }
}

}  // namespace

void check_structure(const Solution& sol, const ProblemInstance& inst) {
  check_topology(sol);
  check_types(sol, inst);
  if (static_cast<int>(sol.placements.size()) != inst.num_loops())
    throw MalformedSolution("expected " + std::to_string(inst.num_loops()) +
                            " placements, found " +
                            std::to_string(sol.placements.size()));
}

double total_cost(const Solution& sol, const ProblemInstance& inst) {
  check_types(sol, inst);
  std::vector<long> count(inst.num_types() + 1, 0);
  for (const Node& n : sol.nodes) ++count[n.type];
  // Summed per type so that relabelled trees give bit-identical totals.
  double cost = 0.0;
  for (int t = 1; t <= inst.num_types(); ++t)
    cost += static_cast<double>(count[t]) * inst.device(t).cost;
  return cost;
}

namespace {

const LoopPlacement& placement_of(const Solution& sol, int loop_id) {
  if (loop_id < 1 || loop_id > static_cast<int>(sol.placements.size()))
    throw Error("loop " + std::to_string(loop_id) + " is not placed");
  return sol.placements[loop_id - 1];
}

double reliability_of(const Solution& sol, const ProblemInstance& inst,
                      const LoopPlacement& p) {
  double survival = 1.0;
  int v = p.connect_leaf;
  while (true) {
    survival = path::survival_step(survival, inst.device(sol.nodes[v].type));
    if (v == p.process_node || !sol.nodes[v].parent) break;
    v = *sol.nodes[v].parent;
  }
  return survival;
}

double delay_of(const Solution& sol, const ProblemInstance& inst,
                const LoopPlacement& p) {
  double delay = 0.0;
  int v = p.connect_leaf;
  while (v != p.process_node && sol.nodes[v].parent) {
    delay += inst.device(sol.nodes[v].type).relay_delay;
    v = *sol.nodes[v].parent;
  }
  return delay;
}

}  // namespace

double path_reliability(const Solution& sol, const ProblemInstance& inst,
                        int loop_id) {
  return reliability_of(sol, inst, placement_of(sol, loop_id));
}

double path_delay(const Solution& sol, const ProblemInstance& inst,
                  int loop_id) {
  return delay_of(sol, inst, placement_of(sol, loop_id));
}

FeasibilityReport check_feasibility(const Solution& sol,
                                    const ProblemInstance& inst) {
  check_structure(sol, inst);
  const int count = static_cast<int>(sol.nodes.size());
  const int levels = inst.levels();
  const GlobalLimits& g = inst.limits;

  std::vector<long> signals(count, 0);
  std::vector<double> memory(count, 0.0);
  std::vector<long> instructions(count, 0);
  for (const LoopPlacement& p : sol.placements) {
    const ControlLoop& loop = inst.loop(p.loop);
    signals[p.connect_leaf] += loop.signals;
    memory[p.process_node] += loop.mem_demand;
    instructions[p.process_node] += loop.instr_count;
  }

  FeasibilityReport report;
  auto node_violation = [&](Constraint c, int id, double measured,
                            double limit) {
    report.violations.push_back(
        {c, Violation::Subject::kNode, id, measured, limit});
  };
  auto loop_violation = [&](Constraint c, int id, double measured,
                            double limit) {
    report.violations.push_back(
        {c, Violation::Subject::kLoop, id, measured, limit});
  };

  for (const Node& n : sol.nodes) {
    const DeviceType& d = inst.device(n.type);
    if (n.is_leaf() && signals[n.id] > d.channels)
      node_violation(Constraint::kChannels, n.id,
                     static_cast<double>(signals[n.id]), d.channels);
  }
  for (const Node& n : sol.nodes) {
    const DeviceType& d = inst.device(n.type);
    const auto k = static_cast<int>(n.children.size());
    if (k > d.max_children)
      node_violation(Constraint::kFanOut, n.id, k, d.max_children);
    else if (n.level < levels && k < 1)
      node_violation(Constraint::kFanOut, n.id, k, 1);
  }
  for (const Node& n : sol.nodes) {
    const DeviceType& d = inst.device(n.type);
    if (d.is_processor() && memory[n.id] > d.memory)
      node_violation(Constraint::kMemory, n.id, memory[n.id], d.memory);
  }
  for (const Node& n : sol.nodes) {
    const DeviceType& d = inst.device(n.type);
    const double cycle = d.instr_time * static_cast<double>(instructions[n.id]);
    if (d.is_processor() && cycle > g.max_cycle_time)
      node_violation(Constraint::kCycleTime, n.id, cycle, g.max_cycle_time);
  }
  for (const LoopPlacement& p : sol.placements) {
    const double r = reliability_of(sol, inst, p);
    if (r < g.min_loop_reliability)
      loop_violation(Constraint::kReliability, p.loop, r,
                     g.min_loop_reliability);
  }
  for (const LoopPlacement& p : sol.placements) {
    const double delay = delay_of(sol, inst, p);
    if (delay > g.max_loop_delay)
      loop_violation(Constraint::kDelay, p.loop, delay, g.max_loop_delay);
  }
  for (const LoopPlacement& p : sol.placements) {
    if (!inst.device(sol.nodes[p.process_node].type).is_processor())
      loop_violation(Constraint::kProcessorOnly, p.loop, 0, 1);
  }
  for (const Node& n : sol.nodes) {
    if (!n.parent) {
      if (n.level != 1)
        node_violation(Constraint::kProperHierarchy, n.id, n.level, 1);
    } else if (n.level != sol.nodes[*n.parent].level + 1) {
      node_violation(Constraint::kProperHierarchy, n.id, n.level,
                     sol.nodes[*n.parent].level + 1);
    }
    if (n.level > levels || (n.is_leaf() && n.level != levels))
      node_violation(Constraint::kProperHierarchy, n.id, n.level, levels);
  }
  for (const Node& n : sol.nodes) {
    if (n.parent && !inst.device(sol.nodes[*n.parent].type).is_processor() &&
        inst.device(n.type).is_processor())
      node_violation(Constraint::kModeMonotone, n.id, 0, 1);
  }
  return report;
}

std::string canonical_signature(const Solution& sol) {
  check_topology(sol);
  const auto count = sol.nodes.size();
  std::vector<std::vector<int>> connected(count), processed(count);
  for (const LoopPlacement& p : sol.placements) {
    connected[p.connect_leaf].push_back(p.loop);
    processed[p.process_node].push_back(p.loop);
  }

  std::function<std::string(int)> encode = [&](int v) {
    const Node& n = sol.nodes[v];
    std::string s = "(" + std::to_string(n.type);
    auto append_ids = [&s](char tag, std::vector<int> ids) {
      if (ids.empty()) return;
      std::sort(ids.begin(), ids.end());
      s += tag;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(ids[i]);
      }
    };
    append_ids('c', connected[v]);
    append_ids('p', processed[v]);
    std::vector<std::string> kids;
    kids.reserve(n.children.size());
    for (int c : n.children) kids.push_back(encode(c));
    std::sort(kids.begin(), kids.end());
    for (const auto& k : kids) s += k;
    s += ")";
    return s;
  };
  return encode(sol.root());
}

std::string to_dot(const Solution& sol, const ProblemInstance& inst) {
  check_structure(sol, inst);
  std::vector<long> signals(sol.nodes.size(), 0);
  for (const LoopPlacement& p : sol.placements)
    signals[p.connect_leaf] += inst.loop(p.loop).signals;

  std::string out = "digraph dcssp {\n  node [shape=box];\n";
  for (const Node& n : sol.nodes) {
    out += "  n" + std::to_string(n.id) + " [label=\"" +
           std::to_string(n.type) + "/" + std::to_string(n.level);
    if (n.is_leaf()) out += "\\n" + std::to_string(signals[n.id]) + " sig";
    out += "\"];\n";
  }
  for (const Node& n : sol.nodes)
    for (int c : n.children)
      out += "  n" + std::to_string(n.id) + " -> n" + std::to_string(c) +
             ";\n";
  out += "}\n";
  return out;
}

std::string serialize_solution(const Solution& sol) {
  Json doc;
  doc["nodes"] = Json::array();
  for (const Node& n : sol.nodes) {
    Json o;
    o["id"] = n.id;
    o["level"] = n.level;
    o["type"] = n.type;
    o["parent"] = n.parent ? Json(*n.parent) : Json(nullptr);
    o["children"] = n.children;
    doc["nodes"].push_back(std::move(o));
  }
  doc["placements"] = Json::array();
  for (const LoopPlacement& p : sol.placements) {
    Json o;
    o["loop"] = p.loop;
    o["connect_leaf"] = p.connect_leaf;
    o["process_node"] = p.process_node;
    doc["placements"].push_back(std::move(o));
  }
  return doc.dump(2) + "\n";
}

namespace {

int int_field(const Json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) throw SchemaError(where + "." + key, "missing key");
  const Json& v = obj.at(key);
  if (!v.is_number_integer())
    throw SchemaError(where + "." + key, "expected an integer");
  return v.get<int>();
}

void no_extra_keys(const Json& obj, const std::string& where,
                   std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) throw SchemaError(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
      throw SchemaError(where + "." + it.key(), "unknown key");
}

}  // namespace

Solution parse_solution(std::string_view text) {
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
  no_extra_keys(doc, "solution", {"nodes", "placements"});
  if (!doc.contains("nodes") || !doc["nodes"].is_array())
    throw SchemaError("nodes", "expected an array");
  if (!doc.contains("placements") || !doc["placements"].is_array())
    throw SchemaError("placements", "expected an array");

  Solution sol;
  for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    const Json& o = doc["nodes"][i];
    no_extra_keys(o, where, {"id", "level", "type", "parent", "children"});
    Node n;
    n.id = int_field(o, where, "id");
    n.level = int_field(o, where, "level");
    n.type = int_field(o, where, "type");
    if (!o.contains("parent"))
      throw SchemaError(where + ".parent", "missing key");
    if (!o["parent"].is_null()) n.parent = int_field(o, where, "parent");
    if (!o.contains("children") || !o["children"].is_array())
      throw SchemaError(where + ".children", "expected an array");
    for (const Json& c : o["children"]) {
      if (!c.is_number_integer())
        throw SchemaError(where + ".children", "expected integers");
      n.children.push_back(c.get<int>());
    }
    sol.nodes.push_back(std::move(n));
  }
  for (std::size_t j = 0; j < doc["placements"].size(); ++j) {
    const std::string where = "placements[" + std::to_string(j) + "]";
    const Json& o = doc["placements"][j];
    no_extra_keys(o, where, {"loop", "connect_leaf", "process_node"});
    sol.placements.push_back({int_field(o, where, "loop"),
                              int_field(o, where, "connect_leaf"),
                              int_field(o, where, "process_node")});
  }
  check_topology(sol);
  return sol;
}

}  // namespace dcssp
