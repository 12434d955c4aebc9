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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "hcp/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = hcp::cli::run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hcplab_test_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

}  // namespace

TEST_CASE("weights and threshold") {
  auto r = run({"weights", "--alpha", "0.07"});
  CHECK(r.status == 0);
  CHECK(r.out == "w_lc=-0.35 w_hc=4.15\n");

  r = run({"threshold", "--alpha", "0.07", "--n-hi", "100"});
  CHECK(r.status == 0);
  CHECK(r.out.find("minimal_integer=386") != std::string::npos);
  CHECK(r.out.find("threshold_real=385.714") != std::string::npos);

  r = run({"weights", "--alpha", "0.09"});
  CHECK(r.status != 0);
  CHECK(r.err.find("error:") == 0);

  r = run({"weights", "--q-hi", "0.5", "--q-li", "0.1", "--p-high", "0.2"});
  CHECK(r.status == 0);
  // w_lc = q_li / (q_li - q_hi), w_hc = (1 - q_li) / (q_hi - q_li).
  CHECK(r.out == "w_lc=-0.25 w_hc=2.25\n");

  r = run({"threshold", "--alpha", "0"});
  CHECK(r.status != 0);
}

TEST_CASE("out-of-range alpha is rejected with the admissible interval") {
  const auto r = run({"reproduce", "--alpha", "0.2"});
  CHECK(r.status != 0);
  CHECK(r.err.find("[0, 0.09]") != std::string::npos);
}

TEST_CASE("unknown flags and missing subcommands are usage errors") {
  CHECK(run({}).status != 0);
  CHECK(run({"weights", "--bogus"}).status != 0);
  CHECK(run({"reproduce", "--format", "xml"}).status != 0);
}

TEST_CASE("reproduce writes parseable tables") {
  const auto dir = scratch("reproduce");
  auto r = run({"reproduce", "--out", dir.string()});
  REQUIRE(r.status == 0);
  for (const char* name : {"scenario", "researchers", "reversals"}) {
    const auto path = dir / (std::string(name) + ".csv");
    REQUIRE(fs::exists(path));
    const auto t = hcp::report::table_from_csv(slurp(path), name);
    CHECK_FALSE(t.rows.empty());
  }
  CHECK(hcp::report::table_from_csv(slurp(dir / "researchers.csv"), "researchers")
            .value("D", "hcp_modified") == doctest::Approx(70.0));

  r = run({"reproduce", "--out", dir.string(), "--format", "json"});
  REQUIRE(r.status == 0);
  const auto rep = hcp::report::report_from_json(slurp(dir / "researchers.json"));
  CHECK(rep == hcp::report::reproduce_researchers());

  r = run({"reproduce"});
  CHECK(r.status == 0);
  CHECK(r.out.find("# scenario.csv\nrow,provenance,note,") == 0);
}

TEST_CASE("simulate is reproducible and reports malformed specs by line") {
  const auto dir = scratch("simulate");
  const auto spec = write_file(dir / "spec.csv", "id,n_hi,n_li\nA,100,0\n# comment\nB,0,500\n");
  const std::vector<std::string> base{"simulate", "--spec", spec.string(), "--reps", "2000",
                                      "--seed", "9", "--per-rep"};
  auto args = base;
  args.insert(args.end(), {"--out", (dir / "one").string()});
  REQUIRE(run(args).status == 0);
  args = base;
  args.insert(args.end(), {"--out", (dir / "two").string(), "--threads", "3"});
  REQUIRE(run(args).status == 0);
  for (const char* f : {"summary.csv", "replications.csv"}) {
    CHECK(slurp(dir / "one" / f) == slurp(dir / "two" / f));
  }
  const auto summary = hcp::report::table_from_csv(slurp(dir / "one" / "summary.csv"), "summary");
  CHECK(summary.value("A standard", "expected") == doctest::Approx(30.0));

  const auto bad = write_file(dir / "bad.csv", "id,n_hi,n_li\nA,100,0\nB,zero,500\n");
  const auto r = run({"simulate", "--spec", bad.string(), "--reps", "10"});
  CHECK(r.status == 1);
  CHECK(r.err.find("line 3") != std::string::npos);

  CHECK(run({"simulate", "--spec", (dir / "missing.csv").string()}).status == 1);
  CHECK(run({"simulate", "--spec", spec.string(), "--reps", "0"}).status == 1);
}

TEST_CASE("config file values apply and explicit flags win") {
  const auto dir = scratch("config");
  const auto spec = write_file(dir / "spec.csv", "id,n_hi,n_li\nA,10,10\n");
  const auto cfg = write_file(dir / "run.toml", "[simulate]\nspec = \"" + spec.string() +
                                                    "\"\nreps = 37\nseed = 5\nformat = \"json\"\n");
  REQUIRE(run({"--config", cfg.string(), "simulate", "--out", dir.string()}).status == 0);
  auto rep = hcp::report::report_from_json(slurp(dir / "simulation.json"));
  CHECK(rep.metadata.at("replications") == "37");
  CHECK(rep.metadata.at("seed") == "5");

  REQUIRE(run({"--config", cfg.string(), "simulate", "--out", dir.string(), "--reps", "12"}).status ==
          0);
  rep = hcp::report::report_from_json(slurp(dir / "simulation.json"));
  CHECK(rep.metadata.at("replications") == "12");
  CHECK(rep.metadata.at("seed") == "5");
}

TEST_CASE("output directory from the environment") {
  const auto dir = scratch("env");
  ::setenv(hcp::cli::kOutDirEnv, dir.string().c_str(), 1);
  const auto r = run({"reproduce"});
  ::unsetenv(hcp::cli::kOutDirEnv);
  CHECK(r.status == 0);
  CHECK(fs::exists(dir / "scenario.csv"));

  // --out overrides the environment.
  const auto other = scratch("env_other");
  ::setenv(hcp::cli::kOutDirEnv, dir.string().c_str(), 1);
  run({"reproduce", "--out", other.string()});
  ::unsetenv(hcp::cli::kOutDirEnv);
  CHECK(fs::exists(other / "researchers.csv"));
}

TEST_CASE("sweep") {
  const auto r = run({"sweep", "--grid", "0,0.07,0.09"});
  REQUIRE(r.status == 0);
  const auto body = r.out.substr(r.out.find('\n') + 1);
  const auto t = hcp::report::table_from_csv(body, "sweep");
  CHECK(t.rows.size() == 3);
  CHECK(t.value("alpha=0.07 A-vs-B", "exact_misrank_standard") > 0.5);

  const auto dir = scratch("sweep");
  const auto spec = write_file(dir / "spec.csv", "id,n_hi,n_li\nA,100,0\nB,0,500\nD,70,270\n");
  CHECK(run({"sweep", "--grid", "0.07", "--spec", spec.string(), "--pair", "A:D", "--pair", "D:B",
             "--out", dir.string()})
            .status == 0);
  CHECK(hcp::report::table_from_csv(slurp(dir / "sweep.csv"), "sweep").rows.size() == 2);
  CHECK(run({"sweep", "--grid", "0.07", "--spec", spec.string(), "--pair", "A:Z"}).status == 1);
  CHECK(run({"sweep", "--grid", "0.5"}).status == 1);
}

TEST_CASE("citegen generates, writes and reclassifies a corpus") {
  const auto dir = scratch("citegen");
  const auto corpus = dir / "corpus.csv";
  REQUIRE(run({"citegen", "--n-hi", "1000", "--n-li", "9000", "--corpus-out", corpus.string(), "--out",
               dir.string()})
              .status == 0);
  const auto first = slurp(dir / "classification.csv");
  REQUIRE(run({"citegen", "--corpus-in", corpus.string(), "--out", dir.string()}).status == 0);
  CHECK(slurp(dir / "classification.csv") == first);

  CHECK(run({"citegen", "--dist", "point", "--count-hi", "5", "--count-li", "1", "--n-hi", "10",
             "--n-li", "90"})
            .status == 0);
  const auto bad = write_file(dir / "bad.csv", "id,impact,citations\np,high,1\nq,medium,2\n");
  const auto r = run({"citegen", "--corpus-in", bad.string()});
  CHECK(r.status == 1);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("installed executable exit codes") {
  const std::string exe = HCPLAB_EXE;
  CHECK(std::system((exe + " weights --alpha 0.07 > /dev/null").c_str()) == 0);
  CHECK(std::system((exe + " weights --alpha 0.2 > /dev/null 2>&1").c_str()) != 0);
}
