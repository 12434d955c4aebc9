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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcp/indices.hpp"
#include "hcp/model.hpp"
#include "hcp/random.hpp"

namespace hcp {

struct ResearcherSpec {
  std::string id;
  std::int64_t n_hi = 0;
  std::int64_t n_li = 0;

  std::int64_t total() const { return n_hi + n_li; }

  bool operator==(const ResearcherSpec&) const = default;
};

// Throws DomainError on negative counts or duplicate ids.
void validate(std::span<const ResearcherSpec> specs);

struct SimConfig {
  std::uint64_t seed = 42;
  std::int64_t replications = 100000;
  ImpactCitationModel model = ImpactCitationModel::from_alpha(0.07);
  // OpenMP worker count for the parallel kernels; 0 keeps the runtime
  // default. Results do not depend on it.
  int threads = 0;
};

void validate(const SimConfig& config);

struct Summary {
  double mean = 0.0;
  // Sample standard deviation (n - 1 denominator); 0 for one replication.
  double sd = 0.0;
  // sd / sqrt(n)
  double se = 0.0;

  bool operator==(const Summary&) const = default;
};

// Mean, then sum of squared deviations, both accumulated in index order.
Summary summarize(std::span<const double> values);

struct IndexSeries {
  bool available = true;
  std::string unavailable_reason;
  std::vector<double> values;  // one per replication; empty when unavailable
  Summary summary;

  bool operator==(const IndexSeries&) const = default;
};

struct ResearcherSeries {
  ResearcherSpec spec;
  std::vector<std::int64_t> n_hc;  // sampled highly cited count per replication
  std::array<IndexSeries, 3> indices;  // ordered as kAllIndexKinds

  const IndexSeries& index(IndexKind kind) const { return indices[static_cast<std::size_t>(kind)]; }

  bool operator==(const ResearcherSeries&) const = default;
};

struct SimResult {
  std::uint64_t seed = 0;
  std::int64_t replications = 0;
  std::vector<ResearcherSeries> researchers;

  bool operator==(const SimResult&) const = default;
};

// n_hc = Binomial(n_hi, q_hi) + Binomial(n_li, q_li); the spec is carried as
// ground truth.
Portfolio sample_portfolio(const ResearcherSpec& spec, const ImpactCitationModel& model,
                           Stream& stream);

// Samples every researcher once per replication and evaluates all three
// indices. Researcher r in replication k draws from
// substream(config.seed, k, r), and per-replication values are stored by
// index before summaries are reduced in replication order, so the result is
// bit-identical for any worker count.
SimResult run_population(std::span<const ResearcherSpec> specs, const SimConfig& config);

// Single-threaded reference for run_population. Same substreams, same
// reduction; kept for tests and benchmarks.
SimResult run_population_serial(std::span<const ResearcherSpec> specs, const SimConfig& config);

struct MisrankEstimate {
  double probability = 0.0;  // fraction of replications with index(y) > index(x)
  double standard_error = 0.0;
  double tie_rate = 0.0;
};

// x must have strictly more high-impact publications than y. Throws
// DomainError otherwise and UndefinedError when the index is unavailable.
MisrankEstimate estimate_misrank_rate(const ResearcherSpec& x, const ResearcherSpec& y,
                                      IndexKind kind, const SimConfig& config);

struct BiasEstimate {
  double bias = 0.0;  // mean modified HCP - n_hi
  double standard_error = 0.0;
};

// Propagates SingularSystemError at independence.
BiasEstimate estimate_bias(const ResearcherSpec& spec, const SimConfig& config);

}  // namespace hcp
