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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcp/citegen.hpp"
#include "hcp/simulate.hpp"

namespace hcp::report {

// A numeric cell. Missing values may carry a short note ("unbounded",
// "undefined", ...); present values never do.
struct Cell {
  std::optional<double> value;
  std::string note;

  static Cell of(double value);  // throws DomainError for non-finite values
  static Cell missing(std::string note = {});

  bool operator==(const Cell&) const = default;
};

struct Row {
  std::string label;
  std::string provenance;
  std::string note;
  std::vector<Cell> cells;

  bool operator==(const Row&) const = default;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<Row> rows;

  // Index of `column`; throws std::out_of_range when absent.
  std::size_t column(std::string_view column) const;
  const Row& row(std::string_view label) const;
  // Value at (label, column); throws when the cell is missing.
  double value(std::string_view label, std::string_view column) const;

  bool operator==(const Table&) const = default;
};

struct Report {
  std::string name;
  std::map<std::string, std::string> metadata;
  std::vector<Table> tables;

  const Table& table(std::string_view name) const;

  bool operator==(const Report&) const = default;
};

// Every row labeled with a provenance, one cell per column, finite values,
// no commas or newlines in labels and notes.
void validate(const Report& report);

enum class Format { kCsv, kJson };
Format parse_format(std::string_view name);

// CSV: header `row,provenance,note,<columns...>`; a missing cell is written
// as its note, or `NA` when it has none.
std::string to_csv(const Table& table);
Table table_from_csv(std::string_view text, std::string name);

// JSON object with name, metadata and tables; missing cells are null (no
// note) or the note string. Doubles are written round-trip exact.
std::string to_json(const Report& report);
Report report_from_json(std::string_view text);

// Joint table with totals for the symmetric model. Throws DomainError
// outside 0 <= alpha <= 0.09.
Report reproduce_scenario_table(double alpha);

// Researchers A (100 high, 0 low impact), B (0, 500), C (200, 50) and
// D (70, 270) with their worked-example observed counts (70/30, 461/39,
// 186/64, 298/42). Tables "researchers" and "reversals".
Report reproduce_researchers(double alpha = 0.07);

struct ResearcherPair {
  ResearcherSpec x;  // truly stronger (more high-impact publications)
  ResearcherSpec y;
};

struct SweepOptions {
  bool exact = true;
  // When set, Monte Carlo misrank estimates are added; the model is replaced
  // per grid point.
  std::optional<SimConfig> simulation;
};

// One row per (alpha, pair). Cells that do not exist at a grid point
// (weights at independence, thresholds with q_li = 0, exact values beyond
// the oracle cap) are missing with a note. Throws DomainError for alphas
// outside [0, 0.09].
Report sweep_alpha(std::span<const double> grid, std::span<const ResearcherPair> pairs,
                   const SweepOptions& options);

// Per researcher and index: mean, sd, se and the model expectation.
Report simulation_summary(const SimResult& result, const ImpactCitationModel& model);

// Highly cited count of every researcher per replication.
Table replication_table(const SimResult& result);

// Threshold, realized fraction, realized joint table and conditionals.
Report classification_report(const ClassificationOutcome& outcome);

}  // namespace hcp::report
