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

#include "hcp/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "hcp/error.hpp"

namespace hcp::csv {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

}  // namespace

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::int64_t parse_int(std::string_view field, std::size_t line, std::string_view what) {
  std::int64_t value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError(fmt::format("{} '{}' is not an integer", what, field), line);
  }
  return value;
}

double parse_real(std::string_view field, std::size_t line, std::string_view what) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError(fmt::format("{} '{}' is not a finite number", what, field), line);
  }
  return value;
}

std::string format_real(double value) { return fmt::format("{}", value); }

std::vector<ResearcherSpec> read_researchers(std::istream& in) {
  std::vector<ResearcherSpec> specs;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto fields = split(line);
    if (!header_seen) {
      if (fields != std::vector<std::string>{"id", "n_hi", "n_li"}) {
        throw ParseError("expected header 'id,n_hi,n_li'", line_no);
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError(fmt::format("expected 3 fields, found {}", fields.size()), line_no);
    }
    if (fields[0].empty()) throw ParseError("empty researcher id", line_no);
    ResearcherSpec spec{fields[0], parse_int(fields[1], line_no, "n_hi"),
                        parse_int(fields[2], line_no, "n_li")};
    if (spec.n_hi < 0 || spec.n_li < 0) {
      throw ParseError("publication counts must be non-negative", line_no);
    }
    if (!ids.insert(spec.id).second) {
      throw ParseError(fmt::format("duplicate researcher id '{}'", spec.id), line_no);
    }
    specs.push_back(std::move(spec));
  }
  if (!header_seen) throw ParseError("missing header 'id,n_hi,n_li'", line_no);
  return specs;
}

void write_researchers(std::ostream& out, const std::vector<ResearcherSpec>& specs) {
  out << "id,n_hi,n_li\n";
  for (const auto& s : specs) out << s.id << ',' << s.n_hi << ',' << s.n_li << '\n';
}

}  // namespace hcp::csv
