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

#include "hcp/simulate.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>
#include <omp.h>

#include "hcp/error.hpp"

namespace hcp {
namespace {

std::int64_t draw_binomial(std::int64_t n, double p, Stream& stream) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  std::binomial_distribution<std::int64_t> dist(n, p);
  return dist(stream);
}

// One (replication, researcher) cell. Both executions call this with the
// same coordinates.
std::int64_t sample_cell(const ResearcherSpec& spec, const SimConfig& config,
                         std::int64_t replication, std::size_t researcher) {
  Stream stream = substream(config.seed, static_cast<std::uint64_t>(replication), researcher);
  return sample_portfolio(spec, config.model, stream).n_hc;
}

std::optional<Weights> weights_or_none(const ImpactCitationModel& model) {
  if (model.independent()) return std::nullopt;
  return solve_weights(model);
}

// Fills indices[] from n_hc. Values are independent per replication, the
// summaries are reduced serially afterwards.
void evaluate_indices(ResearcherSeries& series, const std::optional<Weights>& weights,
                      bool parallel, int threads) {
  const auto reps = static_cast<std::int64_t>(series.n_hc.size());
  const std::int64_t total = series.spec.total();

  for (IndexKind kind : kAllIndexKinds) {
    IndexSeries& out = series.indices[static_cast<std::size_t>(kind)];
    out = IndexSeries{};
    if (kind == IndexKind::kModified && !weights) {
      out.available = false;
      out.unavailable_reason = "weights undefined at independence (q_hi = q_li)";
      continue;
    }
    if (kind == IndexKind::kProportion && total == 0) {
      out.available = false;
      out.unavailable_reason = "empty portfolio";
      continue;
    }
    out.values.resize(static_cast<std::size_t>(reps));
    const auto fill = [&](std::int64_t k) {
      const std::int64_t hc = series.n_hc[static_cast<std::size_t>(k)];
      const Portfolio p{total - hc, hc, Truth{series.spec.n_hi, series.spec.n_li}};
      out.values[static_cast<std::size_t>(k)] = index_value(kind, p, weights);
    };
    if (parallel) {
#pragma omp parallel for schedule(static) num_threads(threads)
      for (std::int64_t k = 0; k < reps; ++k) fill(k);
    } else {
      for (std::int64_t k = 0; k < reps; ++k) fill(k);
    }
    out.summary = summarize(out.values);
  }
}

SimResult run(std::span<const ResearcherSpec> specs, const SimConfig& config, bool parallel) {
  validate(specs);
  validate(config);
  const std::int64_t reps = config.replications;
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();

  SimResult result;
  result.seed = config.seed;
  result.replications = reps;
  result.researchers.resize(specs.size());
  for (std::size_t r = 0; r < specs.size(); ++r) {
    result.researchers[r].spec = specs[r];
    result.researchers[r].n_hc.resize(static_cast<std::size_t>(reps));
  }

  auto& researchers = result.researchers;
  const std::size_t n_researchers = specs.size();
  if (parallel) {
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t k = 0; k < reps; ++k) {
      for (std::size_t r = 0; r < n_researchers; ++r) {
        researchers[r].n_hc[static_cast<std::size_t>(k)] = sample_cell(specs[r], config, k, r);
      }
    }
  } else {
    for (std::int64_t k = 0; k < reps; ++k) {
      for (std::size_t r = 0; r < n_researchers; ++r) {
        researchers[r].n_hc[static_cast<std::size_t>(k)] = sample_cell(specs[r], config, k, r);
      }
    }
  }

  const auto weights = weights_or_none(config.model);
  for (auto& series : researchers) evaluate_indices(series, weights, parallel, threads);
  return result;
}

}  // namespace

void validate(std::span<const ResearcherSpec> specs) {
  std::set<std::string> seen;
  for (const auto& spec : specs) {
    if (spec.n_hi < 0 || spec.n_li < 0) {
      throw DomainError(fmt::format("researcher '{}' has negative publication counts", spec.id));
    }
    if (!seen.insert(spec.id).second) {
      throw DomainError(fmt::format("duplicate researcher id '{}'", spec.id));
    }
  }
}

void validate(const SimConfig& config) {
  if (config.replications < 1) {
    throw ConfigError(fmt::format("replications = {} must be at least 1", config.replications));
  }
  if (config.threads < 0) {
    throw ConfigError("threads must be non-negative");
  }
}

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / (n - 1.0));
    s.se = s.sd / std::sqrt(n);
  }
  return s;
}

Portfolio sample_portfolio(const ResearcherSpec& spec, const ImpactCitationModel& model,
                           Stream& stream) {
  const std::int64_t hc =
      draw_binomial(spec.n_hi, model.q_hi(), stream) + draw_binomial(spec.n_li, model.q_li(), stream);
  return Portfolio{spec.total() - hc, hc, Truth{spec.n_hi, spec.n_li}};
}

SimResult run_population(std::span<const ResearcherSpec> specs, const SimConfig& config) {
  return run(specs, config, /*parallel=*/true);
}

SimResult run_population_serial(std::span<const ResearcherSpec> specs, const SimConfig& config) {
  return run(specs, config, /*parallel=*/false);
}

MisrankEstimate estimate_misrank_rate(const ResearcherSpec& x, const ResearcherSpec& y,
                                      IndexKind kind, const SimConfig& config) {
  if (x.n_hi <= y.n_hi) {
    throw DomainError(fmt::format(
        "misranking needs x to be the stronger researcher: x has {} high-impact publications, "
        "y has {}",
        x.n_hi, y.n_hi));
  }
  ResearcherSpec xs = x;
  ResearcherSpec ys = y;
  if (xs.id == ys.id) {
    xs.id = "x";
    ys.id = "y";
  }
  const std::array<ResearcherSpec, 2> pair{xs, ys};
  const SimResult sim = run_population(pair, config);
  const IndexSeries& sx = sim.researchers[0].index(kind);
  const IndexSeries& sy = sim.researchers[1].index(kind);
  if (!sx.available || !sy.available) {
    throw UndefinedError(fmt::format("{} HCP is unavailable: {}", to_string(kind),
                                     sx.available ? sy.unavailable_reason : sx.unavailable_reason));
  }

  std::int64_t reversed = 0;
  std::int64_t ties = 0;
  for (std::size_t k = 0; k < sx.values.size(); ++k) {
    switch (compare_scores(sy.values[k], sx.values[k])) {
      case Ordering::kGreater:
        ++reversed;
        break;
      case Ordering::kTie:
        ++ties;
        break;
      case Ordering::kLess:
        break;
    }
  }
  const double n = static_cast<double>(sim.replications);
  MisrankEstimate est;
  est.probability = static_cast<double>(reversed) / n;
  est.tie_rate = static_cast<double>(ties) / n;
  est.standard_error = std::sqrt(est.probability * (1.0 - est.probability) / n);
  return est;
}

BiasEstimate estimate_bias(const ResearcherSpec& spec, const SimConfig& config) {
  // Fail before sampling when the weights do not exist.
  (void)solve_weights(config.model);
  const std::array<ResearcherSpec, 1> one{spec};
  const SimResult sim = run_population(one, config);
  const Summary& s = sim.researchers[0].index(IndexKind::kModified).summary;
  return BiasEstimate{s.mean - static_cast<double>(spec.n_hi), s.se};
}

}  // namespace hcp
