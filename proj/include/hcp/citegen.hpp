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

#include "hcp/indices.hpp"
#include "hcp/model.hpp"
#include "hcp/random.hpp"
#include "hcp/simulate.hpp"

namespace hcp {

enum class ImpactClass : std::uint8_t { kLow, kHigh };
enum class CitationClass : std::uint8_t { kLowlyCited, kHighlyCited };

struct Publication {
  std::string id;
  ImpactClass impact = ImpactClass::kLow;
  std::int64_t citations = 0;

  bool operator==(const Publication&) const = default;
};

struct CitationCorpus {
  std::vector<Publication> records;

  bool operator==(const CitationCorpus&) const = default;
};

// Throws DomainError on negative counts or duplicate ids.
void validate(const CitationCorpus& corpus);

// Nonnegative integer citation-count distribution for one impact class.
struct CountDistribution {
  enum class Kind { kGeometric, kPointMass, kLogNormal };

  Kind kind = Kind::kGeometric;
  double mean = 0.0;         // kGeometric: mean on {0, 1, 2, ...}
  std::int64_t value = 0;    // kPointMass
  double mu = 0.0;           // kLogNormal: floor(exp(N(mu, sigma)))
  double sigma = 1.0;

  static CountDistribution geometric(double mean);
  static CountDistribution point_mass(std::int64_t value);
  static CountDistribution log_normal(double mu, double sigma);

  // Throws ConfigError for non-finite or out-of-range parameters.
  void validate() const;
  std::int64_t draw(Stream& stream) const;
};

struct ClassDistributions {
  CountDistribution high;
  CountDistribution low;
};

// Geometric distributions whose population top-fraction cut lands on an
// integer threshold with a prescribed high-impact/lowly-cited mass.
//
// With tails P(X >= t) = r^t, the high-impact class gets
//   p_high * r_high^T = p_high - alpha
// and the low-impact class gets
//   (1 - p_high) * r_low^T = design_fraction - (p_high - alpha),
// so a fraction design_fraction of the population sits at or above T. The
// design fraction is kept below the target top fraction and the tail one
// step lower above it, which pins the empirical threshold to T for large
// corpora.
struct CalibrationTarget {
  double alpha = 0.07;
  double p_high_impact = kDefaultHighImpactShare;
  std::int64_t threshold = 20;
  double design_fraction = 0.095;
};

// Throws ConfigError when no geometric pair satisfies the target.
ClassDistributions calibrate_geometric(const CalibrationTarget& target);

// calibrate_geometric(CalibrationTarget{}): alpha 0.07, threshold 20
// (high-impact mean ~16.1, low-impact mean ~7.1).
ClassDistributions default_distributions();

// The first n_hi records are high impact, the rest low impact. Record i is
// drawn from substream(seed, i, kCorpusLane).
inline constexpr std::uint64_t kCorpusLane = 0x636f72707573ULL;

CitationCorpus generate_corpus(std::int64_t n_hi, std::int64_t n_li,
                               const ClassDistributions& distributions, std::uint64_t seed);
// Serial reference for generate_corpus; identical output.
CitationCorpus generate_corpus_serial(std::int64_t n_hi, std::int64_t n_li,
                                      const ClassDistributions& distributions,
                                      std::uint64_t seed);

struct JointCounts {
  std::int64_t li_lc = 0;
  std::int64_t li_hc = 0;
  std::int64_t hi_lc = 0;
  std::int64_t hi_hc = 0;

  std::int64_t total() const { return li_lc + li_hc + hi_lc + hi_hc; }
  bool operator==(const JointCounts&) const = default;
};

struct ClassificationOutcome {
  std::int64_t threshold = 0;
  double top_fraction = 0.0;
  std::vector<CitationClass> classes;  // parallel to corpus.records
  double realized_fraction = 0.0;      // share classified highly cited
  JointCounts counts;
  ContingencyTable realized;           // counts / corpus size
};

// Threshold t is the smallest integer with
//   #{count >= t} <= top_fraction * N,
// and publications with count >= t are highly cited. Ties at the cut are
// all excluded, so the realized fraction never exceeds top_fraction.
// Throws DomainError for an empty corpus or top_fraction outside (0, 1).
ClassificationOutcome percentile_threshold(const CitationCorpus& corpus, double top_fraction);

// Realized high-impact/lowly-cited mass; the empirical alpha under the
// symmetric 0.1/0.9 setting.
double realized_alpha(const ClassificationOutcome& outcome);

// Model with the realized high-impact share and conditionals. Throws
// UndefinedError when one impact class is absent and CorrelationSignError
// when the realized correlation is negative.
ImpactCitationModel realized_model(const ClassificationOutcome& outcome);

// Draws portfolios by resampling classified publications: n_hi with
// replacement from the high-impact records and n_li from the low-impact
// ones. sample() throws UndefinedError when a needed class is empty.
class CorpusSampler {
 public:
  CorpusSampler(const CitationCorpus& corpus, const ClassificationOutcome& outcome);

  Portfolio sample(const ResearcherSpec& spec, Stream& stream) const;

 private:
  std::vector<std::uint8_t> high_;  // highly cited flag per high-impact record
  std::vector<std::uint8_t> low_;
};

std::string_view to_string(ImpactClass impact);

// Columnar corpus file: header `id,impact,citations`, one record per line,
// impact in {high, low}. read_corpus throws ParseError with line numbers.
void write_corpus(std::ostream& out, const CitationCorpus& corpus);
CitationCorpus read_corpus(std::istream& in);

}  // namespace hcp
