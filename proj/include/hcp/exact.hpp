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
#include <vector>

#include "hcp/indices.hpp"
#include "hcp/model.hpp"
#include "hcp/simulate.hpp"

namespace hcp {

// Largest publication count per researcher the dense oracle accepts. The
// convolution costs O(n_hi * n_li) and the comparison O(total_x * total_y).
inline constexpr std::int64_t kExactMaxPublications = 10000;

// PMF of Binomial(n, p) over 0..n. Entries below ~1e-300 underflow to 0.
std::vector<double> binomial_pmf(std::int64_t n, double p);

// Discrete convolution of two PMFs.
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b);

// PMF of a researcher's highly cited count: Binomial(n_hi, q_hi) convolved
// with Binomial(n_li, q_li). Throws ResourceError above the size cap.
std::vector<double> highly_cited_pmf(const ResearcherSpec& spec, const ImpactCitationModel& model);

struct ExactMisrank {
  double probability = 0.0;  // P(index(y) > index(x))
  double tie_probability = 0.0;
};

// Exact misranking probability by double summation over the two highly
// cited PMFs. Scores are compared with compare_scores, exactly as the Monte
// Carlo estimator does. Throws ResourceError when either researcher exceeds
// kExactMaxPublications (use estimate_misrank_rate instead), SingularSystemError
// for the modified index at independence and UndefinedError for the
// proportion index of an empty portfolio.
ExactMisrank exact_misrank_probability(const ResearcherSpec& x, const ResearcherSpec& y,
                                       const ImpactCitationModel& model,
                                       IndexKind kind = IndexKind::kStandard);

}  // namespace hcp
