// Copyright 2026 The hcplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hcp/simulate.hpp"

namespace hcp::csv {

// Splits one line on commas and trims surrounding blanks. No quoting: none
// of the file formats here carry commas inside a field.
std::vector<std::string> split(std::string_view line);

// Strict integer/real parsing; throw ParseError tagged with `line`.
std::int64_t parse_int(std::string_view field, std::size_t line, std::string_view what);
double parse_real(std::string_view field, std::size_t line, std::string_view what);

// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

// Researcher spec file:
//
//   id,n_hi,n_li
//   A,100,0
//
// Blank lines and lines starting with '#' are skipped. Throws ParseError
// with the offending line number.
std::vector<ResearcherSpec> read_researchers(std::istream& in);
void write_researchers(std::ostream& out, const std::vector<ResearcherSpec>& specs);

}  // namespace hcp::csv
