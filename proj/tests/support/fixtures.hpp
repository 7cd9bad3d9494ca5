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

#ifndef DCSSP_TESTS_SUPPORT_FIXTURES_HPP_
#define DCSSP_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstdint>

#include "dcssp/instance.hpp"
#include "dcssp/structure.hpp"

namespace dcssp::testing {

// PLC-style controller (type 1) and 8-channel I/O module (type 2).
DeviceType plc_device();
DeviceType io_device();

GlobalLimits permissive_limits(int levels);

// One processor type that can host the single loop alone, S = 1.
ProblemInstance instance_t0();

// PLC + I/O, two loops of four signals each, S = 2.
ProblemInstance instance_t1();

// PLC + I/O, three loops, S = 2, and the matching hand-built solution:
// root PLC (node 0), I/O leaves 1 and 2; loops 1, 2 on leaf 1, loop 3 on
// leaf 2, all processed at the root.
ProblemInstance instance_f1();
Solution solution_f1();

// Random-profile instance small enough for exhaustive search.
ProblemInstance tiny_random_instance(std::uint64_t seed, int max_types = 3,
                                     int max_loops = 5, int max_levels = 3);

ProblemInstance plc_io_instance(int loops, int levels, std::uint64_t seed = 1);

}  // namespace dcssp::testing

#endif  // DCSSP_TESTS_SUPPORT_FIXTURES_HPP_
