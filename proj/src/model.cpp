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

#include "hcp/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "hcp/error.hpp"

namespace hcp {
namespace {

void require_probability(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    throw DomainError(fmt::format("{} = {} is not a probability in [0, 1]", name, value));
  }
}

}  // namespace

ImpactCitationModel::ImpactCitationModel(double p_high_impact, double q_hi, double q_li)
    : p_high_impact_(p_high_impact),
      q_hi_(q_hi),
      q_li_(q_li),
      p_highly_cited_(p_high_impact * q_hi + (1.0 - p_high_impact) * q_li) {}

ImpactCitationModel ImpactCitationModel::from_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha > kAlphaIndependence + kProbabilityTolerance) {
    throw DomainError(fmt::format(
        "alpha = {} is outside the admissible interval [0, 0.09]; values above 0.09 "
        "imply a negative impact-citation correlation",
        alpha));
  }
  alpha = std::min(alpha, kAlphaIndependence);
  const double p_hi = kDefaultHighImpactShare;
  const double q_hi = (kDefaultHighImpactShare - alpha) / kDefaultHighImpactShare;
  const double q_li = alpha / (1.0 - kDefaultHighImpactShare);
  // At alpha = 0.09 the two quotients can differ in the last bit; pin them.
  if (alpha == kAlphaIndependence) {
    return ImpactCitationModel(p_hi, kDefaultHighlyCitedShare, kDefaultHighlyCitedShare);
  }
  return ImpactCitationModel(p_hi, q_hi, q_li);
}

ImpactCitationModel ImpactCitationModel::from_conditionals(double p_high_impact, double q_hi,
                                                           double q_li) {
  require_probability(p_high_impact, "p_high_impact");
  require_probability(q_hi, "q_hi");
  require_probability(q_li, "q_li");
  if (q_li > q_hi + kProbabilityTolerance) {
    throw CorrelationSignError(fmt::format(
        "q_li = {} exceeds q_hi = {}: low-impact publications would be more likely to be "
        "highly cited (negative correlation)",
        q_li, q_hi));
  }
  return ImpactCitationModel(p_high_impact, q_hi, std::min(q_li, q_hi));
}

ContingencyTable ImpactCitationModel::joint_table() const {
  const double p_li = 1.0 - p_high_impact_;
  return ContingencyTable{
      .p_li_lc = p_li * (1.0 - q_li_),
      .p_li_hc = p_li * q_li_,
      .p_hi_lc = p_high_impact_ * (1.0 - q_hi_),
      .p_hi_hc = p_high_impact_ * q_hi_,
  };
}

std::optional<double> likelihood_ratio(const ImpactCitationModel& model) {
  if (model.q_li() == 0.0) {
    if (model.q_hi() == 0.0) return 1.0;
    return std::nullopt;
  }
  return model.q_hi() / model.q_li();
}

OutperformThreshold outperform_threshold(const ImpactCitationModel& model, std::int64_t n_hi) {
  if (n_hi < 0) {
    throw DomainError(fmt::format("n_hi = {} must be non-negative", n_hi));
  }
  if (model.q_li() == 0.0) {
    throw UndefinedError(
        "no finite threshold: low-impact publications are never highly cited (q_li = 0)");
  }
  const double real = model.q_hi() / model.q_li() * static_cast<double>(n_hi);
  // Expected counts tie exactly at the threshold, so an integral threshold
  // needs one more publication. Absorb rounding noise around integers.
  const double nearest = std::round(real);
  const bool integral = std::abs(real - nearest) <= 1e-9 * std::max(1.0, std::abs(real));
  const double base = integral ? nearest : std::floor(real);
  return OutperformThreshold{real, static_cast<std::int64_t>(base) + 1};
}

}  // namespace hcp
