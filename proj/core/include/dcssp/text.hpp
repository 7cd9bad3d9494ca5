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

#ifndef DCSSP_TEXT_HPP_
#define DCSSP_TEXT_HPP_

#include <string>
#include <string_view>

namespace dcssp {

// Shortest decimal text that round-trips to the same double. Locale
// independent; infinities are written as "inf"/"-inf", NaN as "nan".
std::string format_number(double value);

// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::string& path);

// Writes a whole file; throws Error when it cannot be written.
void write_file(const std::string& path, std::string_view contents);

}  // namespace dcssp

#endif  // DCSSP_TEXT_HPP_
