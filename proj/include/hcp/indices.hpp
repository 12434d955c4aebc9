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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hcp/model.hpp"

namespace hcp {

// Ground-truth composition of a portfolio. Only known in simulation.
struct Truth {
  std::int64_t n_hi = 0;
  std::int64_t n_li = 0;

  bool operator==(const Truth&) const = default;
};

// Observed citation-class counts of one researcher's publications.
struct Portfolio {
  std::int64_t n_lc = 0;
  std::int64_t n_hc = 0;
  std::optional<Truth> truth;

  std::int64_t total() const { return n_lc + n_hc; }

  bool operator==(const Portfolio&) const = default;
};

// Throws DomainError on negative counts or when truth does not account for
// every publication.
void validate(const Portfolio& portfolio);

struct Weights {
  double w_lc = 0.0;
  double w_hc = 1.0;

  bool operator==(const Weights&) const = default;
};

// Weights of the standard index: a highly cited publication counts 1, a
// lowly cited one 0.
inline constexpr Weights kStandardWeights{0.0, 1.0};

enum class IndexKind { kStandard, kProportion, kModified };

inline constexpr IndexKind kAllIndexKinds[] = {IndexKind::kStandard, IndexKind::kProportion,
                                               IndexKind::kModified};

std::string_view to_string(IndexKind kind);
// Accepts "standard", "proportion", "modified". Throws ConfigError otherwise.
IndexKind parse_index_kind(std::string_view name);

std::int64_t hcp_standard(const Portfolio& portfolio);

// n_hc / (n_lc + n_hc). Throws UndefinedError for an empty portfolio.
double hcp_proportion(const Portfolio& portfolio);

// Solves for the weights that make one high-impact publication contribute 1
// and one low-impact publication contribute 0 in expectation:
//
//   (1 - q_hi) w_lc + q_hi w_hc = 1
//   (1 - q_li) w_lc + q_li w_hc = 0
//
// Throws SingularSystemError when q_hi == q_li.
Weights solve_weights(const ImpactCitationModel& model);

double hcp_modified(const Portfolio& portfolio, const Weights& weights);

struct ExpectedCounts {
  double n_lc = 0.0;
  double n_hc = 0.0;
};

ExpectedCounts expected_counts(const ImpactCitationModel& model, std::int64_t n_hi,
                               std::int64_t n_li);

// Expected modified HCP; equals n_hi up to rounding. Propagates
// SingularSystemError.
double expected_modified(const ImpactCitationModel& model, std::int64_t n_hi, std::int64_t n_li);

// Index value of one portfolio. Modified requires weights; throws
// UndefinedError when they are absent or when a proportion is requested for
// an empty portfolio.
double index_value(IndexKind kind, const Portfolio& portfolio,
                   const std::optional<Weights>& weights);

enum class Ordering { kLess, kTie, kGreater };

// Compares two index values. Real-valued indices tie when they agree to a
// relative 1e-9, which keeps mathematically equal modified scores from being
// split by rounding noise.
Ordering compare_scores(double a, double b);

// Indices of `scores` from best to worst. Equal scores keep input order;
// use compare_scores to report near-equal neighbours as ties.
std::vector<std::size_t> rank_descending(std::span<const double> scores);

}  // namespace hcp
