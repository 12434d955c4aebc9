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

#include "hcp/citegen.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <fmt/format.h>

#include "hcp/csv.hpp"
#include "hcp/error.hpp"

namespace hcp {
namespace {

double mean_from_ratio(double r) { return r / (1.0 - r); }

template <bool Parallel>
CitationCorpus generate(std::int64_t n_hi, std::int64_t n_li, const ClassDistributions& dists,
                        std::uint64_t seed) {
  if (n_hi < 0 || n_li < 0) throw ConfigError("corpus sizes must be non-negative");
  dists.high.validate();
  dists.low.validate();

  const std::int64_t n = n_hi + n_li;
  CitationCorpus corpus;
  corpus.records.resize(static_cast<std::size_t>(n));
  auto& records = corpus.records;
  const auto fill = [&](std::int64_t i) {
    const bool high = i < n_hi;
    Stream stream = substream(seed, static_cast<std::uint64_t>(i), kCorpusLane);
    auto& rec = records[static_cast<std::size_t>(i)];
    rec.id = fmt::format("P{:07d}", i + 1);
    rec.impact = high ? ImpactClass::kHigh : ImpactClass::kLow;
    rec.citations = (high ? dists.high : dists.low).draw(stream);
  };
  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) fill(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) fill(i);
  }
  return corpus;
}

}  // namespace

void validate(const CitationCorpus& corpus) {
  std::unordered_set<std::string_view> ids;
  for (const auto& rec : corpus.records) {
    if (rec.citations < 0) {
      throw DomainError(fmt::format("publication '{}' has a negative citation count", rec.id));
    }
    if (!ids.insert(rec.id).second) {
      throw DomainError(fmt::format("duplicate publication id '{}'", rec.id));
    }
  }
}

CountDistribution CountDistribution::geometric(double mean) {
  CountDistribution d;
  d.kind = Kind::kGeometric;
  d.mean = mean;
  d.validate();
  return d;
}

CountDistribution CountDistribution::point_mass(std::int64_t value) {
  CountDistribution d;
  d.kind = Kind::kPointMass;
  d.value = value;
  d.validate();
  return d;
}

CountDistribution CountDistribution::log_normal(double mu, double sigma) {
  CountDistribution d;
  d.kind = Kind::kLogNormal;
  d.mu = mu;
  d.sigma = sigma;
  d.validate();
  return d;
}

void CountDistribution::validate() const {
  switch (kind) {
    case Kind::kGeometric:
      if (!std::isfinite(mean) || mean < 0.0) {
        throw ConfigError(fmt::format("geometric mean {} must be finite and non-negative", mean));
      }
      return;
    case Kind::kPointMass:
      if (value < 0) throw ConfigError("point-mass citation count must be non-negative");
      return;
    case Kind::kLogNormal:
      if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma <= 0.0) {
        throw ConfigError("log-normal parameters need finite mu and sigma > 0");
      }
      return;
  }
}

std::int64_t CountDistribution::draw(Stream& stream) const {
  switch (kind) {
    case Kind::kGeometric: {
      if (mean == 0.0) return 0;
      std::geometric_distribution<std::int64_t> dist(1.0 / (1.0 + mean));
      return dist(stream);
    }
    case Kind::kPointMass:
      return value;
    case Kind::kLogNormal: {
      std::lognormal_distribution<double> dist(mu, sigma);
      return static_cast<std::int64_t>(std::floor(dist(stream)));
    }
  }
  return 0;
}

ClassDistributions calibrate_geometric(const CalibrationTarget& t) {
  if (t.threshold < 1) throw ConfigError("calibration threshold must be at least 1");
  if (!(t.p_high_impact > 0.0 && t.p_high_impact < 1.0)) {
    throw ConfigError("calibration needs 0 < p_high_impact < 1");
  }
  const double hi_tail = (t.p_high_impact - t.alpha) / t.p_high_impact;
  const double lo_tail = (t.design_fraction - (t.p_high_impact - t.alpha)) / (1.0 - t.p_high_impact);
  if (!(hi_tail > 0.0 && hi_tail < 1.0) || !(lo_tail > 0.0 && lo_tail < 1.0)) {
    throw ConfigError(fmt::format(
        "no geometric calibration for alpha = {}: need 0 < alpha < p_high_impact and "
        "design_fraction > p_high_impact - alpha",
        t.alpha));
  }
  const double inv_t = 1.0 / static_cast<double>(t.threshold);
  return ClassDistributions{
      .high = CountDistribution::geometric(mean_from_ratio(std::pow(hi_tail, inv_t))),
      .low = CountDistribution::geometric(mean_from_ratio(std::pow(lo_tail, inv_t))),
  };
}

ClassDistributions default_distributions() { return calibrate_geometric(CalibrationTarget{}); }

CitationCorpus generate_corpus(std::int64_t n_hi, std::int64_t n_li,
                               const ClassDistributions& distributions, std::uint64_t seed) {
  return generate<true>(n_hi, n_li, distributions, seed);
}

CitationCorpus generate_corpus_serial(std::int64_t n_hi, std::int64_t n_li,
                                      const ClassDistributions& distributions,
                                      std::uint64_t seed) {
  return generate<false>(n_hi, n_li, distributions, seed);
}

ClassificationOutcome percentile_threshold(const CitationCorpus& corpus, double top_fraction) {
  if (corpus.records.empty()) throw DomainError("cannot classify an empty corpus");
  if (!(top_fraction > 0.0 && top_fraction < 1.0)) {
    throw DomainError(fmt::format("top_fraction = {} must lie in (0, 1)", top_fraction));
  }
  validate(corpus);

  const auto n = static_cast<std::int64_t>(corpus.records.size());
  const double limit = top_fraction * static_cast<double>(n) * (1.0 + 1e-12);

  std::vector<std::int64_t> sorted;
  sorted.reserve(corpus.records.size());
  for (const auto& rec : corpus.records) sorted.push_back(rec.citations);
  std::sort(sorted.begin(), sorted.end());

  // For t in (v_prev, v], #{count >= t} equals #{count >= v}; walk distinct
  // values upwards and stop at the first that fits under the limit.
  std::int64_t threshold = sorted.back() + 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) continue;
    const auto at_or_above = static_cast<double>(n - static_cast<std::int64_t>(i));
    if (at_or_above <= limit) {
      threshold = sorted[i - 1] + 1;
      break;
    }
  }

  ClassificationOutcome out;
  out.threshold = threshold;
  out.top_fraction = top_fraction;
  out.classes.reserve(corpus.records.size());
  for (const auto& rec : corpus.records) {
    const bool hc = rec.citations >= threshold;
    out.classes.push_back(hc ? CitationClass::kHighlyCited : CitationClass::kLowlyCited);
    const bool hi = rec.impact == ImpactClass::kHigh;
    if (hi) {
      ++(hc ? out.counts.hi_hc : out.counts.hi_lc);
    } else {
      ++(hc ? out.counts.li_hc : out.counts.li_lc);
    }
  }
  const double nd = static_cast<double>(n);
  out.realized = ContingencyTable{
      .p_li_lc = static_cast<double>(out.counts.li_lc) / nd,
      .p_li_hc = static_cast<double>(out.counts.li_hc) / nd,
      .p_hi_lc = static_cast<double>(out.counts.hi_lc) / nd,
      .p_hi_hc = static_cast<double>(out.counts.hi_hc) / nd,
  };
  out.realized_fraction = static_cast<double>(out.counts.li_hc + out.counts.hi_hc) / nd;
  return out;
}

double realized_alpha(const ClassificationOutcome& outcome) { return outcome.realized.p_hi_lc; }

ImpactCitationModel realized_model(const ClassificationOutcome& outcome) {
  const auto& c = outcome.counts;
  const std::int64_t n_hi = c.hi_lc + c.hi_hc;
  const std::int64_t n_li = c.li_lc + c.li_hc;
  if (n_hi == 0 || n_li == 0) {
    throw UndefinedError("realized conditionals need both impact classes in the corpus");
  }
  return ImpactCitationModel::from_conditionals(
      static_cast<double>(n_hi) / static_cast<double>(c.total()),
      static_cast<double>(c.hi_hc) / static_cast<double>(n_hi),
      static_cast<double>(c.li_hc) / static_cast<double>(n_li));
}

CorpusSampler::CorpusSampler(const CitationCorpus& corpus, const ClassificationOutcome& outcome) {
  if (outcome.classes.size() != corpus.records.size()) {
    throw DomainError("classification outcome does not belong to this corpus");
  }
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    const std::uint8_t hc = outcome.classes[i] == CitationClass::kHighlyCited ? 1 : 0;
    (corpus.records[i].impact == ImpactClass::kHigh ? high_ : low_).push_back(hc);
  }
}

Portfolio CorpusSampler::sample(const ResearcherSpec& spec, Stream& stream) const {
  const auto draw_from = [&](const std::vector<std::uint8_t>& pool, std::int64_t count) {
    if (count == 0) return std::int64_t{0};
    if (pool.empty()) throw UndefinedError("corpus has no publications of the requested class");
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::int64_t hc = 0;
    for (std::int64_t k = 0; k < count; ++k) hc += pool[pick(stream)];
    return hc;
  };
  const std::int64_t hc = draw_from(high_, spec.n_hi) + draw_from(low_, spec.n_li);
  return Portfolio{spec.total() - hc, hc, Truth{spec.n_hi, spec.n_li}};
}

std::string_view to_string(ImpactClass impact) {
  return impact == ImpactClass::kHigh ? "high" : "low";
}

void write_corpus(std::ostream& out, const CitationCorpus& corpus) {
  out << "id,impact,citations\n";
  for (const auto& rec : corpus.records) {
    if (rec.id.find(',') != std::string::npos) {
      throw DomainError(fmt::format("publication id '{}' contains a comma", rec.id));
    }
    out << rec.id << ',' << to_string(rec.impact) << ',' << rec.citations << '\n';
  }
}

CitationCorpus read_corpus(std::istream& in) {
  CitationCorpus corpus;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = csv::split(line);
    if (!header_seen) {
      if (fields != std::vector<std::string>{"id", "impact", "citations"}) {
        throw ParseError("expected header 'id,impact,citations'", line_no);
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError(fmt::format("expected 3 fields, found {}", fields.size()), line_no);
    }
    Publication rec;
    rec.id = fields[0];
    if (rec.id.empty()) throw ParseError("empty publication id", line_no);
    if (fields[1] == "high") {
      rec.impact = ImpactClass::kHigh;
    } else if (fields[1] == "low") {
      rec.impact = ImpactClass::kLow;
    } else {
      throw ParseError(fmt::format("impact '{}' must be 'high' or 'low'", fields[1]), line_no);
    }
    rec.citations = csv::parse_int(fields[2], line_no, "citations");
    if (rec.citations < 0) throw ParseError("citation count must be non-negative", line_no);
    if (!ids.insert(rec.id).second) {
      throw ParseError(fmt::format("duplicate publication id '{}'", rec.id), line_no);
    }
    corpus.records.push_back(std::move(rec));
  }
  if (!header_seen) throw ParseError("missing header 'id,impact,citations'", line_no);
  return corpus;
}

}  // namespace hcp
