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

#ifndef DCSSP_TOOLS_CLI_HPP_
#define DCSSP_TOOLS_CLI_HPP_

#include <iosfwd>

namespace dcssp::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

// Entry point for `dcssp <subcommand> [flags]`. Data goes to files; `out`
// receives the short result lines, `err` every diagnostic.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace dcssp::cli

#endif  // DCSSP_TOOLS_CLI_HPP_
