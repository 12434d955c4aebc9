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

#include "hcp/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "hcp/csv.hpp"
#include "hcp/error.hpp"
#include "hcp/exact.hpp"
#include "hcp/indices.hpp"
#include "json.hpp"

namespace hcp::report {
namespace {

using nlohmann::json;

constexpr std::string_view kProvScenario = "joint impact-citation table under the symmetric 0.1/0.9 model";
constexpr std::string_view kProvWorked = "worked example with observed counts fixed at alpha = 0.07";
constexpr std::string_view kProvRanking = "pairwise ranking of worked-example observed counts";
constexpr std::string_view kProvSweep = "closed forms; exact convolution; Monte Carlo";
constexpr std::string_view kProvSimulation = "Monte Carlo summary";
constexpr std::string_view kProvCitegen = "percentile classification of citation counts";

Cell number_or_missing(const std::optional<double>& v, std::string note) {
  return v ? Cell::of(*v) : Cell::missing(std::move(note));
}

void check_text(std::string_view text, std::string_view what) {
  if (text.find_first_of(",\n\r") != std::string_view::npos) {
    throw DomainError(fmt::format("{} '{}' must not contain commas or newlines", what, text));
  }
}

struct Researcher {
  ResearcherSpec spec;
  Portfolio observed;
};

std::vector<Researcher> worked_researchers() {
  return {
      {{"A", 100, 0}, {70, 30, Truth{100, 0}}},
      {{"B", 0, 500}, {461, 39, Truth{0, 500}}},
      {{"C", 200, 50}, {186, 64, Truth{200, 50}}},
      {{"D", 70, 270}, {298, 42, Truth{70, 270}}},
  };
}

std::optional<double> try_index(IndexKind kind, const Portfolio& p,
                                const std::optional<Weights>& weights) {
  try {
    return index_value(kind, p, weights);
  } catch (const UndefinedError&) {
    return std::nullopt;
  }
}

std::optional<Weights> try_weights(const ImpactCitationModel& model) {
  if (model.independent()) return std::nullopt;
  return solve_weights(model);
}

}  // namespace

Cell Cell::of(double value) {
  if (!std::isfinite(value)) throw DomainError("report cells must be finite");
  return Cell{value, {}};
}

Cell Cell::missing(std::string note) { return Cell{std::nullopt, std::move(note)}; }

std::size_t Table::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range(fmt::format("no column '{}' in {}", name, this->name));
  return static_cast<std::size_t>(it - columns.begin());
}

const Row& Table::row(std::string_view label) const {
  for (const auto& r : rows) {
    if (r.label == label) return r;
  }
  throw std::out_of_range(fmt::format("no row '{}' in {}", label, name));
}

double Table::value(std::string_view label, std::string_view col) const {
  const Cell& cell = row(label).cells.at(column(col));
  if (!cell.value) {
    throw std::out_of_range(fmt::format("cell ({}, {}) is missing: {}", label, col, cell.note));
  }
  return *cell.value;
}

const Table& Report::table(std::string_view table_name) const {
  for (const auto& t : tables) {
    if (t.name == table_name) return t;
  }
  throw std::out_of_range(fmt::format("no table '{}' in report {}", table_name, name));
}

void validate(const Report& report) {
  for (const auto& t : report.tables) {
    for (const auto& c : t.columns) check_text(c, "column");
    for (const auto& r : t.rows) {
      if (r.provenance.empty()) {
        throw DomainError(fmt::format("row '{}' of {} has no provenance", r.label, t.name));
      }
      if (r.cells.size() != t.columns.size()) {
        throw DomainError(fmt::format("row '{}' of {} has {} cells for {} columns", r.label,
                                      t.name, r.cells.size(), t.columns.size()));
      }
      check_text(r.label, "row label");
      check_text(r.provenance, "provenance");
      check_text(r.note, "note");
      for (const auto& c : r.cells) {
        if (c.value && !std::isfinite(*c.value)) throw DomainError("non-finite report cell");
        if (c.value && !c.note.empty()) throw DomainError("present cells carry no note");
        check_text(c.note, "cell note");
      }
    }
  }
}

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw ConfigError(fmt::format("unknown format '{}' (expected csv or json)", name));
}

std::string to_csv(const Table& table) {
  std::string out = "row,provenance,note";
  for (const auto& c : table.columns) out += "," + c;
  out += "\n";
  for (const auto& r : table.rows) {
    out += fmt::format("{},{},{}", r.label, r.provenance, r.note);
    for (const auto& c : r.cells) {
      out += ",";
      if (c.value) {
        out += csv::format_real(*c.value);
      } else {
        out += c.note.empty() ? "NA" : c.note;
      }
    }
    out += "\n";
  }
  return out;
}

Table table_from_csv(std::string_view text, std::string name) {
  Table table;
  table.name = std::move(name);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = csv::split(line);
    if (!header_seen) {
      if (fields.size() < 3 || fields[0] != "row" || fields[1] != "provenance" ||
          fields[2] != "note") {
        throw ParseError("expected header starting with 'row,provenance,note'", line_no);
      }
      table.columns.assign(fields.begin() + 3, fields.end());
      header_seen = true;
      continue;
    }
    if (fields.size() != table.columns.size() + 3) {
      throw ParseError(fmt::format("expected {} fields, found {}", table.columns.size() + 3,
                                   fields.size()),
                       line_no);
    }
    Row row{fields[0], fields[1], fields[2], {}};
    for (std::size_t i = 3; i < fields.size(); ++i) {
      const std::string& f = fields[i];
      if (f == "NA") {
        row.cells.push_back(Cell::missing());
        continue;
      }
      try {
        row.cells.push_back(Cell::of(csv::parse_real(f, line_no, "cell")));
      } catch (const ParseError&) {
        row.cells.push_back(Cell::missing(f));
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw ParseError("empty table file", 0);
  return table;
}

std::string to_json(const Report& report) {
  json j;
  j["name"] = report.name;
  j["metadata"] = report.metadata;
  j["tables"] = json::array();
  for (const auto& t : report.tables) {
    json jt;
    jt["name"] = t.name;
    jt["columns"] = t.columns;
    jt["rows"] = json::array();
    for (const auto& r : t.rows) {
      json cells = json::array();
      for (const auto& c : r.cells) {
        if (c.value) {
          cells.push_back(*c.value);
        } else if (c.note.empty()) {
          cells.push_back(nullptr);
        } else {
          cells.push_back(c.note);
        }
      }
      jt["rows"].push_back(
          {{"label", r.label}, {"provenance", r.provenance}, {"note", r.note}, {"cells", cells}});
    }
    j["tables"].push_back(std::move(jt));
  }
  return j.dump(2) + "\n";
}

Report report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("invalid report JSON: {}", e.what()), 0);
  }
  try {
    Report report;
    report.name = j.at("name").get<std::string>();
    report.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    for (const auto& jt : j.at("tables")) {
      Table t;
      t.name = jt.at("name").get<std::string>();
      t.columns = jt.at("columns").get<std::vector<std::string>>();
      for (const auto& jr : jt.at("rows")) {
        Row r{jr.at("label").get<std::string>(), jr.at("provenance").get<std::string>(),
              jr.at("note").get<std::string>(),
              {}};
        for (const auto& jc : jr.at("cells")) {
          if (jc.is_null()) {
            r.cells.push_back(Cell::missing());
          } else if (jc.is_string()) {
            r.cells.push_back(Cell::missing(jc.get<std::string>()));
          } else {
            r.cells.push_back(Cell::of(jc.get<double>()));
          }
        }
        t.rows.push_back(std::move(r));
      }
      report.tables.push_back(std::move(t));
    }
    return report;
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("malformed report: {}", e.what()), 0);
  }
}

Report reproduce_scenario_table(double alpha) {
  const auto model = ImpactCitationModel::from_alpha(alpha);
  const ContingencyTable t = model.joint_table();
  const std::string prov = fmt::format("{}; alpha = {}", kProvScenario, alpha);

  Table table{"scenario", {"lowly_cited", "highly_cited", "total"}, {}};
  table.rows.push_back(Row{"low-impact", prov, {},
                           {Cell::of(t.p_li_lc), Cell::of(t.p_li_hc), Cell::of(t.low_impact())}});
  table.rows.push_back(Row{"high-impact", prov, {},
                           {Cell::of(t.p_hi_lc), Cell::of(t.p_hi_hc), Cell::of(t.high_impact())}});
  table.rows.push_back(Row{"total", prov, {},
                           {Cell::of(t.lowly_cited()), Cell::of(t.highly_cited()),
                            Cell::of(t.total())}});

  Report report{"scenario", {{"alpha", csv::format_real(alpha)}}, {std::move(table)}};
  validate(report);
  return report;
}

Report reproduce_researchers(double alpha) {
  const auto model = ImpactCitationModel::from_alpha(alpha);
  const auto weights = try_weights(model);
  const auto researchers = worked_researchers();
  const std::string undefined = "undefined at independence";

  Table table{"researchers",
              {"n_hi", "n_li", "expected_lc", "expected_hc", "expected_hc_rounded", "observed_lc",
               "observed_hc", "hcp_standard", "hcp_proportion", "w_lc", "w_hc", "hcp_modified",
               "expected_modified"},
              {}};
  for (const auto& r : researchers) {
    const ExpectedCounts e = expected_counts(model, r.spec.n_hi, r.spec.n_li);
    std::optional<double> expected_mod;
    if (weights) expected_mod = expected_modified(model, r.spec.n_hi, r.spec.n_li);
    Row row{r.spec.id, std::string(kProvWorked), {}, {}};
    row.cells = {
        Cell::of(static_cast<double>(r.spec.n_hi)),
        Cell::of(static_cast<double>(r.spec.n_li)),
        Cell::of(e.n_lc),
        Cell::of(e.n_hc),
        Cell::of(std::round(e.n_hc)),
        Cell::of(static_cast<double>(r.observed.n_lc)),
        Cell::of(static_cast<double>(r.observed.n_hc)),
        Cell::of(static_cast<double>(hcp_standard(r.observed))),
        Cell::of(hcp_proportion(r.observed)),
        number_or_missing(weights ? std::optional(weights->w_lc) : std::nullopt, undefined),
        number_or_missing(weights ? std::optional(weights->w_hc) : std::nullopt, undefined),
        number_or_missing(try_index(IndexKind::kModified, r.observed, weights), undefined),
        number_or_missing(expected_mod, undefined),
    };
    table.rows.push_back(std::move(row));
  }

  // Every ordered pair where x has strictly more high-impact publications,
  // under each index, evaluated on the observed counts.
  Table reversals{"reversals", {"impact_x", "impact_y", "score_x", "score_y", "reversed", "tie"}, {}};
  for (const auto& x : researchers) {
    for (const auto& y : researchers) {
      if (x.spec.n_hi <= y.spec.n_hi) continue;
      for (IndexKind kind : kAllIndexKinds) {
        const auto sx = try_index(kind, x.observed, weights);
        const auto sy = try_index(kind, y.observed, weights);
        Row row{fmt::format("{}-vs-{} {}", x.spec.id, y.spec.id, to_string(kind)),
                std::string(kProvRanking),
                {},
                {Cell::of(static_cast<double>(x.spec.n_hi)),
                 Cell::of(static_cast<double>(y.spec.n_hi)), number_or_missing(sx, undefined),
                 number_or_missing(sy, undefined), Cell::missing(undefined),
                 Cell::missing(undefined)}};
        if (sx && sy) {
          const Ordering ord = compare_scores(*sy, *sx);
          row.cells[4] = Cell::of(ord == Ordering::kGreater ? 1.0 : 0.0);
          row.cells[5] = Cell::of(ord == Ordering::kTie ? 1.0 : 0.0);
          if (ord == Ordering::kGreater) {
            row.note = fmt::format("{} ranks {} above {} despite fewer high-impact publications",
                                   to_string(kind), y.spec.id, x.spec.id);
          }
        }
        // A is beaten by D on both observable counts yet has more impact.
        if (x.spec.id == "A" && y.spec.id == "D" && kind == IndexKind::kStandard) {
          row.note = fmt::format(
              "D exceeds A in highly cited ({} vs. {}) and lowly cited ({} vs. {}) counts",
              x.observed.n_hc, y.observed.n_hc, x.observed.n_lc, y.observed.n_lc);
        }
        reversals.rows.push_back(std::move(row));
      }
    }
  }

  Report report{"researchers",
                {{"alpha", csv::format_real(alpha)}},
                {std::move(table), std::move(reversals)}};
  validate(report);
  return report;
}

Report sweep_alpha(std::span<const double> grid, std::span<const ResearcherPair> pairs,
                   const SweepOptions& options) {
  Table table{"sweep",
              {"alpha", "x_n_hi", "x_n_li", "y_n_hi", "y_n_li", "w_lc", "w_hc",
               "likelihood_ratio", "threshold_real", "threshold_min_int",
               "exact_misrank_standard", "exact_tie_standard", "exact_misrank_modified",
               "exact_tie_modified", "mc_misrank_standard", "mc_se_standard",
               "mc_tie_standard", "mc_misrank_modified", "mc_se_modified", "mc_tie_modified"},
              {}};
  const std::string undefined = "undefined at independence";

  for (double alpha : grid) {
    const auto model = ImpactCitationModel::from_alpha(alpha);
    const auto weights = try_weights(model);
    const auto ratio = likelihood_ratio(model);
    for (const auto& pair : pairs) {
      const auto& x = pair.x;
      const auto& y = pair.y;
      Row row{fmt::format("alpha={} {}-vs-{}", csv::format_real(alpha), x.id, y.id),
              std::string(kProvSweep),
              {},
              {}};
      auto& cells = row.cells;
      cells.push_back(Cell::of(alpha));
      for (auto v : {x.n_hi, x.n_li, y.n_hi, y.n_li}) cells.push_back(Cell::of(static_cast<double>(v)));
      cells.push_back(number_or_missing(weights ? std::optional(weights->w_lc) : std::nullopt, undefined));
      cells.push_back(number_or_missing(weights ? std::optional(weights->w_hc) : std::nullopt, undefined));
      cells.push_back(number_or_missing(ratio, "unbounded"));
      if (model.q_li() > 0.0) {
        const auto th = outperform_threshold(model, x.n_hi);
        cells.push_back(Cell::of(th.real));
        cells.push_back(Cell::of(static_cast<double>(th.minimal_integer)));
      } else {
        cells.push_back(Cell::missing("no finite threshold"));
        cells.push_back(Cell::missing("no finite threshold"));
      }

      for (IndexKind kind : {IndexKind::kStandard, IndexKind::kModified}) {
        if (!options.exact) {
          cells.push_back(Cell::missing("not requested"));
          cells.push_back(Cell::missing("not requested"));
        } else if (kind == IndexKind::kModified && !weights) {
          cells.push_back(Cell::missing(undefined));
          cells.push_back(Cell::missing(undefined));
        } else if (x.total() > kExactMaxPublications || y.total() > kExactMaxPublications) {
          cells.push_back(Cell::missing("beyond exact cap"));
          cells.push_back(Cell::missing("beyond exact cap"));
        } else {
          const auto ex = exact_misrank_probability(x, y, model, kind);
          cells.push_back(Cell::of(ex.probability));
          cells.push_back(Cell::of(ex.tie_probability));
        }
      }

      for (IndexKind kind : {IndexKind::kStandard, IndexKind::kModified}) {
        std::string why;
        if (!options.simulation) {
          why = "not requested";
        } else if (kind == IndexKind::kModified && !weights) {
          why = undefined;
        } else if (x.n_hi <= y.n_hi) {
          why = "x not stronger";
        }
        if (!why.empty()) {
          for (int i = 0; i < 3; ++i) cells.push_back(Cell::missing(why));
          continue;
        }
        SimConfig config = *options.simulation;
        config.model = model;
        const auto est = estimate_misrank_rate(x, y, kind, config);
        cells.push_back(Cell::of(est.probability));
        cells.push_back(Cell::of(est.standard_error));
        cells.push_back(Cell::of(est.tie_rate));
      }
      table.rows.push_back(std::move(row));
    }
  }

  Report report{"sweep", {}, {std::move(table)}};
  if (options.simulation) {
    report.metadata["seed"] = std::to_string(options.simulation->seed);
    report.metadata["replications"] = std::to_string(options.simulation->replications);
  }
  validate(report);
  return report;
}

Report simulation_summary(const SimResult& result, const ImpactCitationModel& model) {
  Table table{"summary", {"n_hi", "n_li", "mean", "sd", "se", "expected"}, {}};
  for (const auto& series : result.researchers) {
    const auto& spec = series.spec;
    const ExpectedCounts e = expected_counts(model, spec.n_hi, spec.n_li);
    for (IndexKind kind : kAllIndexKinds) {
      const IndexSeries& s = series.index(kind);
      Row row{fmt::format("{} {}", spec.id, to_string(kind)), std::string(kProvSimulation), {}, {}};
      row.cells = {Cell::of(static_cast<double>(spec.n_hi)), Cell::of(static_cast<double>(spec.n_li))};
      if (!s.available) {
        for (int i = 0; i < 4; ++i) row.cells.push_back(Cell::missing(s.unavailable_reason));
      } else {
        row.cells.push_back(Cell::of(s.summary.mean));
        row.cells.push_back(Cell::of(s.summary.sd));
        row.cells.push_back(Cell::of(s.summary.se));
        double expected = e.n_hc;
        if (kind == IndexKind::kProportion) expected = e.n_hc / static_cast<double>(spec.total());
        if (kind == IndexKind::kModified) expected = expected_modified(model, spec.n_hi, spec.n_li);
        row.cells.push_back(Cell::of(expected));
      }
      table.rows.push_back(std::move(row));
    }
  }
  Report report{"simulation",
                {{"seed", std::to_string(result.seed)},
                 {"replications", std::to_string(result.replications)},
                 {"alpha", csv::format_real(model.alpha())},
                 {"q_hi", csv::format_real(model.q_hi())},
                 {"q_li", csv::format_real(model.q_li())},
                 {"p_high_impact", csv::format_real(model.p_high_impact())}},
                {std::move(table)}};
  validate(report);
  return report;
}

Table replication_table(const SimResult& result) {
  Table table{"replications", {}, {}};
  for (const auto& s : result.researchers) table.columns.push_back(s.spec.id + "_n_hc");
  for (std::int64_t k = 0; k < result.replications; ++k) {
    Row row{std::to_string(k), std::string(kProvSimulation), {}, {}};
    for (const auto& s : result.researchers) {
      row.cells.push_back(Cell::of(static_cast<double>(s.n_hc[static_cast<std::size_t>(k)])));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Report classification_report(const ClassificationOutcome& outcome) {
  const std::string prov(kProvCitegen);
  const auto& c = outcome.counts;
  Table summary{"classification",
                {"threshold", "top_fraction", "realized_fraction", "publications",
                 "realized_alpha"},
                {}};
  summary.rows.push_back(Row{"corpus", prov, {},
                             {Cell::of(static_cast<double>(outcome.threshold)),
                              Cell::of(outcome.top_fraction), Cell::of(outcome.realized_fraction),
                              Cell::of(static_cast<double>(c.total())),
                              Cell::of(realized_alpha(outcome))}});

  const ContingencyTable& t = outcome.realized;
  Table joint{"realized_joint", {"lowly_cited", "highly_cited", "total", "count_lc", "count_hc"}, {}};
  joint.rows.push_back(Row{"low-impact", prov, {},
                           {Cell::of(t.p_li_lc), Cell::of(t.p_li_hc), Cell::of(t.low_impact()),
                            Cell::of(static_cast<double>(c.li_lc)),
                            Cell::of(static_cast<double>(c.li_hc))}});
  joint.rows.push_back(Row{"high-impact", prov, {},
                           {Cell::of(t.p_hi_lc), Cell::of(t.p_hi_hc), Cell::of(t.high_impact()),
                            Cell::of(static_cast<double>(c.hi_lc)),
                            Cell::of(static_cast<double>(c.hi_hc))}});
  joint.rows.push_back(Row{"total", prov, {},
                           {Cell::of(t.lowly_cited()), Cell::of(t.highly_cited()),
                            Cell::of(t.total()), Cell::of(static_cast<double>(c.li_lc + c.hi_lc)),
                            Cell::of(static_cast<double>(c.li_hc + c.hi_hc))}});

  Table conditionals{"realized_model", {"p_high_impact", "q_hi", "q_li"}, {}};
  try {
    const auto m = realized_model(outcome);
    conditionals.rows.push_back(Row{"realized", prov, {},
                                    {Cell::of(m.p_high_impact()), Cell::of(m.q_hi()),
                                     Cell::of(m.q_li())}});
  } catch (const std::exception&) {
    conditionals.rows.push_back(Row{"realized", prov, "no valid realized model",
                                    {Cell::missing(), Cell::missing(), Cell::missing()}});
  }

  Report report{"citegen",
                {{"threshold", std::to_string(outcome.threshold)},
                 {"top_fraction", csv::format_real(outcome.top_fraction)}},
                {std::move(summary), std::move(joint), std::move(conditionals)}};
  validate(report);
  return report;
}

}  // namespace hcp::report
