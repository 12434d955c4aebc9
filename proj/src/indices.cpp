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

#include "hcp/indices.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "hcp/error.hpp"

namespace hcp {

void validate(const Portfolio& portfolio) {
  if (portfolio.n_lc < 0 || portfolio.n_hc < 0) {
    throw DomainError(fmt::format("portfolio counts must be non-negative (n_lc = {}, n_hc = {})",
                                  portfolio.n_lc, portfolio.n_hc));
  }
  if (portfolio.truth) {
    const auto& t = *portfolio.truth;
    if (t.n_hi < 0 || t.n_li < 0) {
      throw DomainError("ground-truth counts must be non-negative");
    }
    if (t.n_hi + t.n_li != portfolio.total()) {
      throw DomainError(fmt::format(
          "ground truth ({} high + {} low impact) does not match {} observed publications",
          t.n_hi, t.n_li, portfolio.total()));
    }
  }
}

std::string_view to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::kStandard:
      return "standard";
    case IndexKind::kProportion:
      return "proportion";
    case IndexKind::kModified:
      return "modified";
  }
  return "unknown";
}

IndexKind parse_index_kind(std::string_view name) {
  for (IndexKind kind : kAllIndexKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw ConfigError(
      fmt::format("unknown index '{}' (expected standard, proportion or modified)", name));
}

std::int64_t hcp_standard(const Portfolio& portfolio) { return portfolio.n_hc; }

double hcp_proportion(const Portfolio& portfolio) {
  if (portfolio.total() == 0) {
    throw UndefinedError("proportion of highly cited publications is undefined for an empty "
                         "portfolio");
  }
  return static_cast<double>(portfolio.n_hc) / static_cast<double>(portfolio.total());
}

Weights solve_weights(const ImpactCitationModel& model) {
  const double q_hi = model.q_hi();
  const double q_li = model.q_li();
  // Cramer's rule on the 2x2 system; the determinant is q_li - q_hi.
  const double det = (1.0 - q_hi) * q_li - q_hi * (1.0 - q_li);
  if (model.independent() || std::abs(det) <= kProbabilityTolerance) {
    throw SingularSystemError(fmt::format(
        "weights are undefined when impact and citations are uncorrelated (q_hi = q_li = {}, "
        "i.e. alpha = 0.09)",
        q_hi));
  }
  const double w_lc = (1.0 * q_li - q_hi * 0.0) / det;
  const double w_hc = ((1.0 - q_hi) * 0.0 - (1.0 - q_li) * 1.0) / det;
  // w_lc is exactly zero under perfect correlation; avoid printing -0.
  return Weights{w_lc == 0.0 ? 0.0 : w_lc, w_hc};
}

double hcp_modified(const Portfolio& portfolio, const Weights& weights) {
  return static_cast<double>(portfolio.n_lc) * weights.w_lc +
         static_cast<double>(portfolio.n_hc) * weights.w_hc;
}

ExpectedCounts expected_counts(const ImpactCitationModel& model, std::int64_t n_hi,
                               std::int64_t n_li) {
  if (n_hi < 0 || n_li < 0) {
    throw DomainError("publication counts must be non-negative");
  }
  const double hi = static_cast<double>(n_hi);
  const double li = static_cast<double>(n_li);
  return ExpectedCounts{
      .n_lc = (1.0 - model.q_hi()) * hi + (1.0 - model.q_li()) * li,
      .n_hc = model.q_hi() * hi + model.q_li() * li,
  };
}

double expected_modified(const ImpactCitationModel& model, std::int64_t n_hi, std::int64_t n_li) {
  const Weights w = solve_weights(model);
  const ExpectedCounts e = expected_counts(model, n_hi, n_li);
  return e.n_lc * w.w_lc + e.n_hc * w.w_hc;
}

double index_value(IndexKind kind, const Portfolio& portfolio,
                   const std::optional<Weights>& weights) {
  switch (kind) {
    case IndexKind::kStandard:
      return static_cast<double>(hcp_standard(portfolio));
    case IndexKind::kProportion:
      return hcp_proportion(portfolio);
    case IndexKind::kModified:
      if (!weights) throw UndefinedError("modified HCP is unavailable: weights are undefined");
      return hcp_modified(portfolio, *weights);
  }
  throw UndefinedError("unknown index kind");
}

Ordering compare_scores(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a - b) <= 1e-9 * scale) return Ordering::kTie;
  return a < b ? Ordering::kLess : Ordering::kGreater;
}

std::vector<std::size_t> rank_descending(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  return order;
}

}  // namespace hcp
