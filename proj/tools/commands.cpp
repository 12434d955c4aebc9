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

#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "hcp/citegen.hpp"
#include "hcp/csv.hpp"
#include "hcp/error.hpp"
#include "hcp/indices.hpp"
#include "hcp/model.hpp"
#include "hcp/report.hpp"
#include "hcp/simulate.hpp"

namespace hcp::cli {
namespace {

namespace fs = std::filesystem;

struct OutputOptions {
  std::string dir;
  std::string format = "csv";
};

// Writes reports to files under `dir`, or to `out` when no directory is set.
// Returns the number of outputs that could not be written.
class Sink {
 public:
  Sink(const OutputOptions& opts, std::ostream& out, std::ostream& err)
      : format_(report::parse_format(opts.format)), out_(out), err_(err) {
    if (!opts.dir.empty()) {
      dir_ = fs::path(opts.dir);
    } else if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
      dir_ = fs::path(env);
    }
  }

  void emit(const report::Report& rep) {
    if (format_ == report::Format::kJson) {
      write(rep.name + ".json", report::to_json(rep));
    } else {
      for (const auto& t : rep.tables) write(t.name + ".csv", report::to_csv(t));
    }
  }

  void emit_table(const report::Table& table) {
    if (format_ == report::Format::kJson) {
      write(table.name + ".json", report::to_json(report::Report{table.name, {}, {table}}));
    } else {
      write(table.name + ".csv", report::to_csv(table));
    }
  }

  int failures() const { return failures_; }

 private:
  void write(const std::string& file, const std::string& text) {
    if (!dir_) {
      out_ << "# " << file << "\n" << text;
      return;
    }
    std::error_code ec;
    fs::create_directories(*dir_, ec);
    const fs::path path = *dir_ / file;
    std::ofstream f(path, std::ios::binary);
    f << text;
    f.close();
    if (!f) {
      err_ << "error: could not write " << path.string() << "\n";
      ++failures_;
      return;
    }
    out_ << "wrote " << path.string() << "\n";
  }

  report::Format format_;
  std::optional<fs::path> dir_;
  std::ostream& out_;
  std::ostream& err_;
  int failures_ = 0;
};

struct ModelFlags {
  double alpha = 0.07;
  double p_high = kDefaultHighImpactShare;
  double q_hi = 0.0;
  double q_li = 0.0;
  CLI::Option* q_hi_opt = nullptr;
  CLI::Option* q_li_opt = nullptr;

  void attach(CLI::App* sub) {
    auto* a = sub->add_option("--alpha", alpha,
                              "Off-diagonal mass of the symmetric model, in [0, 0.09]")
                  ->capture_default_str();
    auto* p = sub->add_option("--p-high", p_high, "High-impact share (with --q-hi/--q-li)")
                  ->capture_default_str();
    q_hi_opt = sub->add_option("--q-hi", q_hi, "P(highly cited | high impact)");
    q_li_opt = sub->add_option("--q-li", q_li, "P(highly cited | low impact)");
    q_hi_opt->needs(q_li_opt)->excludes(a);
    q_li_opt->needs(q_hi_opt)->excludes(a);
    p->needs(q_hi_opt);
  }

  ImpactCitationModel build() const {
    if (q_hi_opt->count() > 0) return ImpactCitationModel::from_conditionals(p_high, q_hi, q_li);
    return ImpactCitationModel::from_alpha(alpha);
  }
};

std::vector<ResearcherSpec> load_specs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open researcher file '{}'", path));
  try {
    return csv::read_researchers(in);
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", path, e.what()), 0);
  }
}

void add_output_flags(CLI::App* sub, OutputOptions& opts) {
  sub->add_option("--out", opts.dir,
                  fmt::format("Output directory (default: ${} or stdout)", kOutDirEnv));
  sub->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

std::string fmt_real(double v) { return fmt::format("{:.10g}", v); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hcplab: highly cited publication indices under a binary impact-citation model"};
  app.set_config("--config", "", "Key-value configuration file (flags override it)");
  app.require_subcommand(1);

  OutputOptions output;

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "Scenario table and worked researcher examples");
  double reproduce_alpha = 0.07;
  reproduce->add_option("--alpha", reproduce_alpha, "Alpha for the scenario table")
      ->capture_default_str();
  add_output_flags(reproduce, output);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run over a researcher spec file");
  std::string spec_path;
  std::int64_t reps = 100000;
  std::uint64_t seed = 42;
  int threads = 0;
  bool per_rep = false;
  ModelFlags sim_model;
  simulate->add_option("--spec", spec_path, "Researcher file with header id,n_hi,n_li")
      ->required();
  sim_model.attach(simulate);
  simulate->add_option("--reps", reps, "Replications")->capture_default_str();
  simulate->add_option("--seed", seed, "Seed")->capture_default_str();
  simulate->add_option("--threads", threads, "OpenMP workers (0 = runtime default)");
  simulate->add_flag("--per-rep", per_rep, "Also write per-replication highly cited counts");
  add_output_flags(simulate, output);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Weights, thresholds and misrank rates over alpha");
  std::vector<double> grid{0.0, 0.01, 0.02, 0.03, 0.045, 0.06, 0.07, 0.08};
  std::string sweep_spec;
  std::vector<std::string> pair_names;
  std::int64_t sweep_reps = 0;
  bool no_exact = false;
  sweep->add_option("--grid", grid, "Alpha values")->delimiter(',');
  sweep->add_option("--spec", sweep_spec, "Researcher file (default: A=(100,0), B=(0,500))");
  sweep->add_option("--pair", pair_names, "X:Y ids from --spec, X the stronger researcher");
  sweep->add_option("--reps", sweep_reps, "Monte Carlo replications (0 = exact only)");
  sweep->add_option("--seed", seed, "Seed")->capture_default_str();
  sweep->add_option("--threads", threads, "OpenMP workers (0 = runtime default)");
  sweep->add_flag("--no-exact", no_exact, "Skip the exact convolution oracle");
  add_output_flags(sweep, output);

  // weights
  auto* weights = app.add_subcommand("weights", "Print the modified-index weights");
  ModelFlags weights_model;
  weights_model.attach(weights);

  // threshold
  auto* threshold = app.add_subcommand("threshold", "Print the outperformance threshold");
  ModelFlags threshold_model;
  std::int64_t threshold_n_hi = 100;
  threshold_model.attach(threshold);
  threshold->add_option("--n-hi", threshold_n_hi, "High-impact publications")
      ->capture_default_str();

  // citegen
  auto* citegen = app.add_subcommand("citegen", "Generate and/or classify a citation corpus");
  std::int64_t corpus_hi = 10000;
  std::int64_t corpus_li = 90000;
  double top_fraction = 0.1;
  std::string dist = "calibrated";
  double calibrate_alpha = 0.07;
  double mean_hi = 16.0;
  double mean_li = 7.0;
  double mu_hi = 2.5, sigma_hi = 1.0, mu_li = 1.5, sigma_li = 1.0;
  std::int64_t count_hi = 10, count_li = 1;
  std::string corpus_in;
  std::string corpus_out;
  citegen->add_option("--n-hi", corpus_hi, "High-impact publications")->capture_default_str();
  citegen->add_option("--n-li", corpus_li, "Low-impact publications")->capture_default_str();
  citegen->add_option("--seed", seed, "Seed")->capture_default_str();
  citegen->add_option("--top-fraction", top_fraction, "Highly cited share")->capture_default_str();
  citegen->add_option("--dist", dist, "Count distributions")
      ->check(CLI::IsMember({"calibrated", "geometric", "lognormal", "point"}))
      ->capture_default_str();
  citegen->add_option("--calibrate-alpha", calibrate_alpha, "Target alpha for --dist calibrated")
      ->capture_default_str();
  citegen->add_option("--mean-hi", mean_hi, "Geometric mean, high impact");
  citegen->add_option("--mean-li", mean_li, "Geometric mean, low impact");
  citegen->add_option("--mu-hi", mu_hi, "Log-normal mu, high impact");
  citegen->add_option("--sigma-hi", sigma_hi, "Log-normal sigma, high impact");
  citegen->add_option("--mu-li", mu_li, "Log-normal mu, low impact");
  citegen->add_option("--sigma-li", sigma_li, "Log-normal sigma, low impact");
  citegen->add_option("--count-hi", count_hi, "Point-mass count, high impact");
  citegen->add_option("--count-li", count_li, "Point-mass count, low impact");
  citegen->add_option("--corpus-in", corpus_in, "Classify this corpus instead of generating one");
  citegen->add_option("--corpus-out", corpus_out, "Write the generated corpus here");
  add_output_flags(citegen, output);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*reproduce) {
      Sink sink(output, out, err);
      sink.emit(report::reproduce_scenario_table(reproduce_alpha));
      sink.emit(report::reproduce_researchers());
      return sink.failures() == 0 ? 0 : 1;
    }

    if (*simulate) {
      const auto specs = load_specs(spec_path);
      SimConfig config{seed, reps, sim_model.build(), threads};
      const SimResult result = run_population(specs, config);
      Sink sink(output, out, err);
      sink.emit(report::simulation_summary(result, config.model));
      if (per_rep) sink.emit_table(report::replication_table(result));
      return sink.failures() == 0 ? 0 : 1;
    }

    if (*sweep) {
      std::vector<report::ResearcherPair> pairs;
      if (sweep_spec.empty()) {
        if (!pair_names.empty()) throw ConfigError("--pair needs --spec");
        pairs.push_back({{"A", 100, 0}, {"B", 0, 500}});
      } else {
        const auto specs = load_specs(sweep_spec);
        std::map<std::string, ResearcherSpec> by_id;
        for (const auto& s : specs) by_id[s.id] = s;
        if (pair_names.empty()) {
          throw ConfigError("--spec needs at least one --pair X:Y");
        }
        for (const auto& name : pair_names) {
          const auto colon = name.find(':');
          if (colon == std::string::npos) {
            throw ConfigError(fmt::format("pair '{}' is not of the form X:Y", name));
          }
          const auto x = by_id.find(name.substr(0, colon));
          const auto y = by_id.find(name.substr(colon + 1));
          if (x == by_id.end() || y == by_id.end()) {
            throw ConfigError(fmt::format("pair '{}' names an unknown researcher", name));
          }
          pairs.push_back({x->second, y->second});
        }
      }
      report::SweepOptions options;
      options.exact = !no_exact;
      if (sweep_reps > 0) {
        options.simulation = SimConfig{seed, sweep_reps, ImpactCitationModel::from_alpha(0.07), threads};
      }
      Sink sink(output, out, err);
      sink.emit(report::sweep_alpha(grid, pairs, options));
      return sink.failures() == 0 ? 0 : 1;
    }

    if (*weights) {
      const Weights w = solve_weights(weights_model.build());
      out << "w_lc=" << fmt_real(w.w_lc) << " w_hc=" << fmt_real(w.w_hc) << "\n";
      return 0;
    }

    if (*threshold) {
      const auto th = outperform_threshold(threshold_model.build(), threshold_n_hi);
      out << "threshold_real=" << fmt_real(th.real) << " minimal_integer=" << th.minimal_integer
          << "\n";
      return 0;
    }

    if (*citegen) {
      CitationCorpus corpus;
      if (!corpus_in.empty()) {
        std::ifstream in(corpus_in);
        if (!in) throw ConfigError(fmt::format("cannot open corpus file '{}'", corpus_in));
        try {
          corpus = read_corpus(in);
        } catch (const ParseError& e) {
          throw ParseError(fmt::format("{}: {}", corpus_in, e.what()), 0);
        }
      } else {
        ClassDistributions dists;
        if (dist == "calibrated") {
          CalibrationTarget target;
          target.alpha = calibrate_alpha;
          dists = calibrate_geometric(target);
        } else if (dist == "geometric") {
          dists = {CountDistribution::geometric(mean_hi), CountDistribution::geometric(mean_li)};
        } else if (dist == "lognormal") {
          dists = {CountDistribution::log_normal(mu_hi, sigma_hi),
                   CountDistribution::log_normal(mu_li, sigma_li)};
        } else {
          dists = {CountDistribution::point_mass(count_hi), CountDistribution::point_mass(count_li)};
        }
        corpus = generate_corpus(corpus_hi, corpus_li, dists, seed);
      }
      int failures = 0;
      if (!corpus_out.empty()) {
        std::ofstream f(corpus_out, std::ios::binary);
        write_corpus(f, corpus);
        f.close();
        if (!f) {
          err << "error: could not write " << corpus_out << "\n";
          ++failures;
        } else {
          out << "wrote " << corpus_out << "\n";
        }
      }
      Sink sink(output, out, err);
      sink.emit(report::classification_report(percentile_threshold(corpus, top_fraction)));
      return failures + sink.failures() == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace hcp::cli
