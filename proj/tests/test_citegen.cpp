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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "hcp/citegen.hpp"
#include "hcp/error.hpp"

using hcp::CitationClass;
using hcp::CitationCorpus;
using hcp::ImpactClass;

namespace {

CitationCorpus corpus_from_counts(const std::vector<std::int64_t>& counts,
                                  ImpactClass impact = ImpactClass::kLow) {
  CitationCorpus c;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    c.records.push_back({"p" + std::to_string(i), impact, counts[i]});
  }
  return c;
}

std::int64_t highly_cited(const hcp::ClassificationOutcome& o) {
  return o.counts.li_hc + o.counts.hi_hc;
}

}  // namespace

TEST_CASE("generate_corpus: empty and degenerate") {
  CHECK(hcp::generate_corpus(0, 0, hcp::default_distributions(), 1).records.empty());

  const hcp::ClassDistributions point{hcp::CountDistribution::point_mass(10),
                                      hcp::CountDistribution::point_mass(1)};
  const auto c = hcp::generate_corpus(5, 20, point, 3);
  REQUIRE(c.records.size() == 25);
  for (const auto& r : c.records) {
    CHECK(r.citations == (r.impact == ImpactClass::kHigh ? 10 : 1));
  }
  CHECK(c.records.front().impact == ImpactClass::kHigh);
  CHECK(c.records.back().impact == ImpactClass::kLow);
  CHECK_NOTHROW(hcp::validate(c));
}

TEST_CASE("generate_corpus: class means within 4 standard errors") {
  const auto dists = hcp::ClassDistributions{hcp::CountDistribution::geometric(12.0),
                                             hcp::CountDistribution::geometric(3.0)};
  const auto c = hcp::generate_corpus(1000, 9000, dists, 2024);
  double sum_hi = 0, sum_li = 0;
  for (const auto& r : c.records) (r.impact == ImpactClass::kHigh ? sum_hi : sum_li) += r.citations;
  // Geometric with mean m has variance m (m + 1).
  const double se_hi = std::sqrt(12.0 * 13.0 / 1000);
  const double se_li = std::sqrt(3.0 * 4.0 / 9000);
  CHECK(std::abs(sum_hi / 1000 - 12.0) <= 4 * se_hi);
  CHECK(std::abs(sum_li / 9000 - 3.0) <= 4 * se_li);
}

TEST_CASE("generate_corpus: parallel kernel matches the serial reference") {
  const auto dists = hcp::default_distributions();
  const auto par = hcp::generate_corpus(3000, 27000, dists, 5);
  CHECK(par == hcp::generate_corpus_serial(3000, 27000, dists, 5));
  CHECK(par == hcp::generate_corpus(3000, 27000, dists, 5));
  CHECK_FALSE(par == hcp::generate_corpus(3000, 27000, dists, 6));
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(hcp::CountDistribution::geometric(-1.0), hcp::ConfigError);
  CHECK_THROWS_AS(hcp::CountDistribution::point_mass(-2), hcp::ConfigError);
  CHECK_THROWS_AS(hcp::CountDistribution::log_normal(1.0, 0.0), hcp::ConfigError);
  CHECK_THROWS_AS(hcp::generate_corpus(-1, 3, hcp::default_distributions(), 1), hcp::ConfigError);
  CHECK_THROWS_AS(hcp::calibrate_geometric({.alpha = 0.001}), hcp::ConfigError);
  CHECK_THROWS_AS(hcp::calibrate_geometric({.alpha = 0.1}), hcp::ConfigError);

  // Log-normal counts are non-negative integers.
  const auto c = hcp::generate_corpus(
      100, 100, {hcp::CountDistribution::log_normal(2.0, 1.5), hcp::CountDistribution::log_normal(0.5, 1.0)}, 9);
  CHECK_NOTHROW(hcp::validate(c));
}

TEST_CASE("percentile_threshold: order statistics") {
  const auto o = hcp::percentile_threshold(corpus_from_counts({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}), 0.1);
  CHECK(o.threshold == 9);
  CHECK(highly_cited(o) == 1);
  CHECK(o.realized_fraction == doctest::Approx(0.1));
  CHECK(o.classes[9] == CitationClass::kHighlyCited);
  CHECK(o.classes[8] == CitationClass::kLowlyCited);
}

TEST_CASE("percentile_threshold: ties at the cut are excluded") {
  auto o = hcp::percentile_threshold(corpus_from_counts(std::vector<std::int64_t>(50, 4)), 0.1);
  CHECK(o.threshold == 5);
  CHECK(highly_cited(o) == 0);
  CHECK(o.realized_fraction == 0.0);

  // Three pubs tie at the top of 20; 10% allows 2, so all three drop out
  // and the cut moves above them.
  std::vector<std::int64_t> counts(17, 1);
  counts.insert(counts.end(), {9, 9, 9});
  o = hcp::percentile_threshold(corpus_from_counts(counts), 0.1);
  CHECK(o.threshold == 10);
  CHECK(highly_cited(o) == 0);

  counts = std::vector<std::int64_t>(17, 1);
  counts.insert(counts.end(), {5, 9, 9});
  o = hcp::percentile_threshold(corpus_from_counts(counts), 0.1);
  CHECK(o.threshold == 6);
  CHECK(highly_cited(o) == 2);
}

TEST_CASE("percentile_threshold: errors") {
  CHECK_THROWS_AS(hcp::percentile_threshold(CitationCorpus{}, 0.1), hcp::DomainError);
  CHECK_THROWS_AS(hcp::percentile_threshold(corpus_from_counts({1, 2}), 0.0), hcp::DomainError);
  CHECK_THROWS_AS(hcp::percentile_threshold(corpus_from_counts({1, 2}), 1.0), hcp::DomainError);
  auto bad = corpus_from_counts({1, 2});
  bad.records[1].id = bad.records[0].id;
  CHECK_THROWS_AS(hcp::percentile_threshold(bad, 0.1), hcp::DomainError);
}

TEST_CASE("property: threshold rule invariants on random corpora") {
  hcp::Stream rng(77);
  std::uniform_int_distribution<std::int64_t> size(1, 300);
  std::uniform_int_distribution<std::int64_t> count(0, 40);
  std::uniform_real_distribution<double> frac(0.01, 0.99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(size(rng)));
    for (auto& c : counts) c = count(rng);
    const double f = frac(rng);
    const auto corpus = corpus_from_counts(counts);
    const auto o = hcp::percentile_threshold(corpus, f);
    const auto n = static_cast<double>(counts.size());

    CHECK(o.realized_fraction <= f + 1e-12);
    // Minimality: one lower threshold would exceed the fraction.
    const auto at_or_above = [&](std::int64_t t) {
      return static_cast<double>(std::count_if(counts.begin(), counts.end(),
                                               [&](std::int64_t c) { return c >= t; }));
    };
    CHECK(at_or_above(o.threshold) <= f * n + 1e-9);
    CHECK(at_or_above(o.threshold - 1) > f * n);
    // Determinism.
    CHECK(hcp::percentile_threshold(corpus, f).classes == o.classes);
    // Shift invariance.
    auto shifted = corpus;
    for (auto& r : shifted.records) r.citations += 13;
    const auto os = hcp::percentile_threshold(shifted, f);
    CHECK(os.threshold == o.threshold + 13);
    CHECK(os.classes == o.classes);
    // Realized table is consistent with its margins.
    const auto& t = o.realized;
    CHECK(std::abs(t.total() - 1.0) < 1e-12);
    CHECK(std::abs(t.highly_cited() - o.realized_fraction) < 1e-12);
  }
}

TEST_CASE("realized_alpha") {
  SUBCASE("injected scenario cells give exactly 0.07") {
    // 83 low/lowly, 7 low/highly, 7 high/lowly, 3 high/highly out of 100.
    CitationCorpus c;
    int id = 0;
    auto add = [&](ImpactClass impact, std::int64_t cites, int n) {
      for (int i = 0; i < n; ++i) c.records.push_back({std::to_string(id++), impact, cites});
    };
    add(ImpactClass::kLow, 0, 83);
    add(ImpactClass::kLow, 10, 7);
    add(ImpactClass::kHigh, 0, 7);
    add(ImpactClass::kHigh, 10, 3);
    const auto o = hcp::percentile_threshold(c, 0.1);
    CHECK(o.threshold == 1);
    CHECK(hcp::realized_alpha(o) == 0.07);
    CHECK(o.counts == hcp::JointCounts{83, 7, 7, 3});
    const auto m = hcp::realized_model(o);
    CHECK(m.q_hi() == doctest::Approx(0.3));
    CHECK(m.q_li() == doctest::Approx(7.0 / 90.0));
  }
  SUBCASE("perfect separation gives alpha 0") {
    const hcp::ClassDistributions sep{hcp::CountDistribution::point_mass(50),
                                      hcp::CountDistribution::point_mass(2)};
    const auto o = hcp::percentile_threshold(hcp::generate_corpus(1000, 9000, sep, 1), 0.1);
    CHECK(hcp::realized_alpha(o) == 0.0);
    CHECK(o.realized_fraction == doctest::Approx(0.1));
  }
  SUBCASE("independent counts approach 0.09") {
    const auto same = hcp::CountDistribution::geometric(40.0);
    const auto o = hcp::percentile_threshold(hcp::generate_corpus(10000, 90000, {same, same}, 4), 0.1);
    // Independence: P(HI and LC) = 0.1 (1 - f) with f the realized fraction.
    const double target = 0.1 * (1.0 - o.realized_fraction);
    const double se = std::sqrt(target * (1 - target) / 100000);
    CHECK(std::abs(hcp::realized_alpha(o) - target) <= 4 * se);
    CHECK(std::abs(hcp::realized_alpha(o) - 0.09) < 0.005);
  }
  SUBCASE("one impact class missing") {
    const auto o = hcp::percentile_threshold(corpus_from_counts({1, 2, 3}), 0.1);
    CHECK_THROWS_AS(hcp::realized_model(o), hcp::UndefinedError);
  }
}

TEST_CASE("calibrated corpus: fraction and alpha on target") {
  for (double alpha : {0.03, 0.05, 0.07}) {
    const auto dists = hcp::calibrate_geometric({.alpha = alpha});
    CHECK(dists.high.mean > dists.low.mean);
    const auto o = hcp::percentile_threshold(hcp::generate_corpus(10000, 90000, dists, 31), 0.1);
    CAPTURE(alpha);
    CHECK(o.threshold == 20);
    CHECK(o.realized_fraction >= 0.08);
    CHECK(o.realized_fraction <= 0.10);
    const double se = std::sqrt(alpha * (1 - alpha) / 100000);
    CHECK(std::abs(hcp::realized_alpha(o) - alpha) <= 4 * se);
  }
}

TEST_CASE("corpus sampler reproduces realized conditionals") {
  const auto corpus = hcp::generate_corpus(10000, 90000, hcp::default_distributions(), 8);
  const auto o = hcp::percentile_threshold(corpus, 0.1);
  const auto m = hcp::realized_model(o);
  const hcp::CorpusSampler sampler(corpus, o);
  const hcp::ResearcherSpec d{"D", 70, 270};
  const int reps = 20000;
  double sum = 0, sum_sq = 0;
  for (int k = 0; k < reps; ++k) {
    auto s = hcp::substream(3, static_cast<std::uint64_t>(k), 0);
    const auto p = sampler.sample(d, s);
    CHECK(p.total() == 340);
    sum += static_cast<double>(p.n_hc);
    sum_sq += static_cast<double>(p.n_hc * p.n_hc);
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum_sq / reps - mean * mean) / reps);
  CHECK(std::abs(mean - hcp::expected_counts(m, 70, 270).n_hc) <= 4 * se);

  auto s = hcp::substream(3, 0, 0);
  const auto only_low = hcp::generate_corpus(0, 50, hcp::default_distributions(), 2);
  const hcp::CorpusSampler low_sampler(only_low, hcp::percentile_threshold(only_low, 0.1));
  CHECK_THROWS_AS(low_sampler.sample({"x", 1, 0}, s), hcp::UndefinedError);
  CHECK_NOTHROW(low_sampler.sample({"x", 0, 4}, s));
}

TEST_CASE("corpus file round trip and parse errors") {
  const auto corpus = hcp::generate_corpus(30, 70, hcp::default_distributions(), 12);
  std::stringstream ss;
  hcp::write_corpus(ss, corpus);
  CHECK(ss.str().rfind("id,impact,citations\n", 0) == 0);
  CHECK(hcp::read_corpus(ss) == corpus);

  std::istringstream bad_impact("id,impact,citations\np1,high,3\np2,medium,4\n");
  try {
    (void)hcp::read_corpus(bad_impact);
    FAIL("expected a parse error");
  } catch (const hcp::ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream bad_count("id,impact,citations\np1,low,-3\n");
  CHECK_THROWS_AS(hcp::read_corpus(bad_count), hcp::ParseError);
  std::istringstream dup("id,impact,citations\np1,low,3\np1,low,3\n");
  CHECK_THROWS_AS(hcp::read_corpus(dup), hcp::ParseError);
  std::istringstream no_header("p1,low,3\n");
  CHECK_THROWS_AS(hcp::read_corpus(no_header), hcp::ParseError);
}
