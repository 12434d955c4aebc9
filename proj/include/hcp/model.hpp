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

namespace hcp {

inline constexpr double kProbabilityTolerance = 1e-12;

// Marginal shares used throughout the worked examples: 10% of publications
// are high impact and 10% are highly cited.
inline constexpr double kDefaultHighImpactShare = 0.1;
inline constexpr double kDefaultHighlyCitedShare = 0.1;

// Upper end of the admissible alpha range for the 0.1/0.9 marginals. At this
// value impact and citation class are independent.
inline constexpr double kAlphaIndependence = 0.09;

// Joint probabilities over (impact class, citation class). Rows are impact
// (low, high), columns citation (lowly, highly cited).
struct ContingencyTable {
  double p_li_lc = 0.0;
  double p_li_hc = 0.0;
  double p_hi_lc = 0.0;
  double p_hi_hc = 0.0;

  double low_impact() const { return p_li_lc + p_li_hc; }
  double high_impact() const { return p_hi_lc + p_hi_hc; }
  double lowly_cited() const { return p_li_lc + p_hi_lc; }
  double highly_cited() const { return p_li_hc + p_hi_hc; }
  double total() const { return p_li_lc + p_li_hc + p_hi_lc + p_hi_hc; }
};

// The binary impact-citation model.
//
// Canonically stored as the high-impact marginal plus the two conditional
// probabilities of being highly cited. The highly-cited marginal is derived
// from them, so marginal consistency holds by construction. Instances are
// immutable once built and can only be obtained through the validating
// factories below.
class ImpactCitationModel {
 public:
  // Symmetric 0.1/0.9 model: cells (0.9 - alpha, alpha, alpha, 0.1 - alpha).
  // Throws DomainError unless 0 <= alpha <= 0.09.
  static ImpactCitationModel from_alpha(double alpha);

  // General model. Throws DomainError for inputs outside [0, 1] and
  // CorrelationSignError when q_li > q_hi.
  static ImpactCitationModel from_conditionals(double p_high_impact, double q_hi,
                                               double q_li);

  double p_high_impact() const { return p_high_impact_; }
  double p_highly_cited() const { return p_highly_cited_; }
  // P(highly cited | high impact)
  double q_hi() const { return q_hi_; }
  // P(highly cited | low impact)
  double q_li() const { return q_li_; }

  // Mass of high-impact publications that are lowly cited. Equals alpha for
  // models built by from_alpha.
  double alpha() const { return p_high_impact_ * (1.0 - q_hi_); }

  // True when the citation class carries no information about impact.
  bool independent() const { return q_hi_ - q_li_ <= kProbabilityTolerance; }

  ContingencyTable joint_table() const;

  bool operator==(const ImpactCitationModel&) const = default;

 private:
  ImpactCitationModel(double p_high_impact, double q_hi, double q_li);

  double p_high_impact_;
  double q_hi_;
  double q_li_;
  double p_highly_cited_;
};

inline ContingencyTable joint_table(const ImpactCitationModel& model) {
  return model.joint_table();
}

// q_hi / q_li. An empty optional means "unbounded" (q_li == 0 < q_hi). When
// both conditionals are zero the classes carry no signal and the ratio is 1.
std::optional<double> likelihood_ratio(const ImpactCitationModel& model);

struct OutperformThreshold {
  // (q_hi / q_li) * n_hi; with 0.1/0.9 marginals (0.9 - 9 alpha) / alpha * n_hi.
  double real = 0.0;
  // Smallest number of low-impact publications whose expected highly cited
  // count strictly exceeds that of n_hi high-impact publications.
  std::int64_t minimal_integer = 0;
};

// Throws UndefinedError when q_li == 0 (no finite threshold) and DomainError
// for negative n_hi.
OutperformThreshold outperform_threshold(const ImpactCitationModel& model,
                                         std::int64_t n_hi);

}  // namespace hcp
