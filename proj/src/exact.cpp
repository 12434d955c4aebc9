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

#include "hcp/exact.hpp"

#include <cmath>

#include <fmt/format.h>

#include "hcp/error.hpp"

namespace hcp {
namespace {

void check_size(const ResearcherSpec& spec) {
  if (spec.n_hi < 0 || spec.n_li < 0) {
    throw DomainError(fmt::format("researcher '{}' has negative publication counts", spec.id));
  }
  if (spec.total() > kExactMaxPublications) {
    throw ResourceError(fmt::format(
        "researcher '{}' has {} publications, above the exact-oracle cap of {}; use the Monte "
        "Carlo estimator instead",
        spec.id, spec.total(), kExactMaxPublications));
  }
}

// Binomial terms via Loader's saddle-point expansion ("Fast and accurate
// computation of binomial probabilities", 2000). Relative error is near
// machine precision even for n in the thousands, where lgamma differences
// lose about three digits.

// log(n!) - log(sqrt(2 pi n) (n/e)^n)
double stirling_error(double n) {
  constexpr double s0 = 1.0 / 12, s1 = 1.0 / 360, s2 = 1.0 / 1260, s3 = 1.0 / 1680,
                   s4 = 1.0 / 1188;
  if (n <= 15.0) {
    if (n == 0.0) return 0.0;
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * std::log(2.0 * M_PI);
  }
  const double nn = n * n;
  if (n > 500) return (s0 - s1 / nn) / n;
  if (n > 80) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x log(x / np) + np - x, without cancellation when x is close to np.
double deviance_term(double x, double np) {
  if (std::abs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

double binomial_term(double k, double n, double p, double q) {
  if (k == 0.0) {
    if (n == 0.0) return 1.0;
    return std::exp(p < 0.1 ? -deviance_term(n, n * q) - n * p : n * std::log(q));
  }
  if (k == n) {
    return std::exp(q < 0.1 ? -deviance_term(n, n * p) - n * q : n * std::log(p));
  }
  const double lc = stirling_error(n) - stirling_error(k) - stirling_error(n - k) -
                    deviance_term(k, n * p) - deviance_term(n - k, n * q);
  const double lf = std::log(2.0 * M_PI) + std::log(k) + std::log1p(-k / n);
  return std::exp(lc - 0.5 * lf);
}

std::vector<double> scores(const ResearcherSpec& spec, IndexKind kind,
                           const std::optional<Weights>& weights) {
  std::vector<double> out(static_cast<std::size_t>(spec.total() + 1));
  for (std::int64_t hc = 0; hc <= spec.total(); ++hc) {
    out[static_cast<std::size_t>(hc)] = index_value(kind, Portfolio{spec.total() - hc, hc, {}}, weights);
  }
  return out;
}

}  // namespace

std::vector<double> binomial_pmf(std::int64_t n, double p) {
  if (n < 0) throw DomainError("binomial size must be non-negative");
  std::vector<double> pmf(static_cast<std::size_t>(n + 1), 0.0);
  if (p <= 0.0) {
    pmf.front() = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf.back() = 1.0;
    return pmf;
  }
  const double q = 1.0 - p;
  for (std::int64_t k = 0; k <= n; ++k) {
    pmf[static_cast<std::size_t>(k)] = binomial_term(static_cast<double>(k), static_cast<double>(n), p, q);
  }
  return pmf;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<double> highly_cited_pmf(const ResearcherSpec& spec, const ImpactCitationModel& model) {
  check_size(spec);
  return convolve(binomial_pmf(spec.n_hi, model.q_hi()), binomial_pmf(spec.n_li, model.q_li()));
}

ExactMisrank exact_misrank_probability(const ResearcherSpec& x, const ResearcherSpec& y,
                                       const ImpactCitationModel& model, IndexKind kind) {
  check_size(x);
  check_size(y);
  std::optional<Weights> weights;
  if (kind == IndexKind::kModified) weights = solve_weights(model);

  const std::vector<double> px = highly_cited_pmf(x, model);
  const std::vector<double> py = highly_cited_pmf(y, model);
  const std::vector<double> sx = scores(x, kind, weights);
  const std::vector<double> sy = scores(y, kind, weights);

  ExactMisrank out;
  for (std::size_t j = 0; j < py.size(); ++j) {
    if (py[j] == 0.0) continue;
    double above = 0.0;
    double tie = 0.0;
    for (std::size_t i = 0; i < px.size(); ++i) {
      switch (compare_scores(sy[j], sx[i])) {
        case Ordering::kGreater:
          above += px[i];
          break;
        case Ordering::kTie:
          tie += px[i];
          break;
        case Ordering::kLess:
          break;
      }
    }
    out.probability += py[j] * above;
    out.tie_probability += py[j] * tie;
  }
  return out;
}

}  // namespace hcp
