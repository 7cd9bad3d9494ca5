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
#include <limits>

#include "dcssp/aco.hpp"

namespace dcssp {

PheromoneTables::PheromoneTables(const ProblemInstance& inst,
                                 PheromoneBounds bounds)
    : levels_(inst.levels()),
      types_(inst.num_types()),
      max_count_(inst.max_fanout()),
      loops_(inst.num_loops()),
      bounds_(bounds) {
  if (!(bounds.tau_min > 0.0 && bounds.tau_min <= bounds.tau0 &&
        bounds.tau0 <= bounds.tau_max))
    throw Error("pheromone bounds must satisfy 0 < tau_min <= tau0 <= tau_max");
  type_.assign(static_cast<std::size_t>(levels_) * (types_ + 1) * types_,
               bounds.tau0);
  count_.assign(static_cast<std::size_t>(levels_) * types_ * max_count_,
                bounds.tau0);
  loop_level_.assign(static_cast<std::size_t>(loops_) * levels_, bounds.tau0);
}

CellRef PheromoneTables::type_cell(int level, int parent_type,
                                   int type) const {
  const auto idx =
      (static_cast<std::size_t>(level - 1) * (types_ + 1) + parent_type) *
          types_ +
      (type - 1);
  return {TableId::kType, idx};
}

CellRef PheromoneTables::count_cell(int level, int node_type,
                                    int count) const {
  const auto idx =
      (static_cast<std::size_t>(level - 1) * types_ + (node_type - 1)) *
          max_count_ +
      (count - 1);
  return {TableId::kCount, idx};
}

CellRef PheromoneTables::loop_level_cell(int loop_id, int level) const {
  return {TableId::kLoopLevel,
          static_cast<std::size_t>(loop_id - 1) * levels_ + (level - 1)};
}

const std::vector<double>& PheromoneTables::table(TableId id) const {
  switch (id) {
    case TableId::kType:
      return type_;
    case TableId::kCount:
      return count_;
    case TableId::kLoopLevel:
      break;
  }
  return loop_level_;
}

std::vector<double>& PheromoneTables::table(TableId id) {
  return const_cast<std::vector<double>&>(
      static_cast<const PheromoneTables&>(*this).table(id));
}

double PheromoneTables::clamp(double v) const {
  return std::clamp(v, bounds_.tau_min, bounds_.tau_max);
}

void PheromoneTables::set(CellRef cell, double value) {
  table(cell.table).at(cell.index) = clamp(value);
}

void PheromoneTables::evaporate(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0))
    throw Error("evaporation rate out of [0,1]");
  const double keep = 1.0 - rho;
  for (auto* t : {&type_, &count_, &loop_level_})
    for (double& v : *t) v = clamp(v * keep);
}

void PheromoneTables::deposit(std::span<const CellRef> trace, double amount) {
  if (!(amount >= 0.0) || !std::isfinite(amount))
    throw Error("deposit amount must be a non-negative finite number");
  for (const CellRef& c : trace) {
    double& v = table(c.table).at(c.index);
    v = clamp(v + amount);
  }
}

double PheromoneTables::min_value() const {
  double m = bounds_.tau_max;
  for (const auto* t : {&type_, &count_, &loop_level_})
    for (double v : *t) m = std::min(m, v);
  return m;
}

double PheromoneTables::max_value() const {
  double m = bounds_.tau_min;
  for (const auto* t : {&type_, &count_, &loop_level_})
    for (double v : *t) m = std::max(m, v);
  return m;
}

std::vector<double> selection_probabilities(std::span<const Option> options,
                                            double alpha, double beta) {
  if (options.empty()) return {};
  // Log space keeps large exponents (alpha = 0.2n at n = 500) from
  // overflowing or underflowing before normalization.
  std::vector<double> logw(options.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < options.size(); ++i) {
    const double a = alpha == 0.0 ? 0.0 : alpha * std::log(options[i].tau);
    const double b = beta == 0.0 ? 0.0 : beta * std::log(options[i].eta);
    logw[i] = a + b;
    if (std::isnan(logw[i]) || logw[i] == std::numeric_limits<double>::infinity())
      return {};
    top = std::max(top, logw[i]);
  }
  if (!std::isfinite(top)) return {};
  double total = 0.0;
  for (double& w : logw) {
    w = std::exp(w - top);
    total += w;
  }
  for (double& w : logw) w /= total;
  return logw;
}

std::optional<std::size_t> select_option(std::span<const Option> options,
                                         double alpha, double beta, Rng& rng) {
  const auto probs = selection_probabilities(options, alpha, beta);
  if (probs.empty()) return std::nullopt;
  const double u = rng.uniform01();
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_positive = i;
    acc += probs[i];
    if (u < acc) return i;
  }
  return last_positive;
}

}  // namespace dcssp
