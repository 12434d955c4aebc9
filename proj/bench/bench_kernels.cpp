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

// Serial reference vs OpenMP kernels. Arguments are replication or record
// counts; the parallel variants also take a worker count.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "hcp/citegen.hpp"
#include "hcp/simulate.hpp"

namespace {

const std::vector<hcp::ResearcherSpec>& population() {
  static const std::vector<hcp::ResearcherSpec> specs{
      {"A", 100, 0}, {"B", 0, 500}, {"C", 200, 50}, {"D", 70, 270}};
  return specs;
}

void BM_PopulationSerial(benchmark::State& state) {
  hcp::SimConfig config;
  config.replications = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hcp::run_population_serial(population(), config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PopulationParallel(benchmark::State& state) {
  hcp::SimConfig config;
  config.replications = state.range(0);
  config.threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hcp::run_population(population(), config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CorpusSerial(benchmark::State& state) {
  const auto dists = hcp::default_distributions();
  const auto n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hcp::generate_corpus_serial(n / 10, n - n / 10, dists, 1));
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_CorpusParallel(benchmark::State& state) {
  const auto dists = hcp::default_distributions();
  const auto n = state.range(0);
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hcp::generate_corpus(n / 10, n - n / 10, dists, 1));
  }
  state.SetItemsProcessed(state.iterations() * n);
}

int max_workers() { return omp_get_max_threads(); }

void worker_args(benchmark::internal::Benchmark* b, std::int64_t size) {
  for (int t = 1; t <= max_workers(); t *= 2) b->Args({size, t});
  if ((max_workers() & (max_workers() - 1)) != 0) b->Args({size, max_workers()});
}

}  // namespace

BENCHMARK(BM_PopulationSerial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PopulationParallel)
    ->Apply([](auto* b) { worker_args(b, 20000); })
    ->ArgNames({"reps", "threads"})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorpusSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorpusParallel)
    ->Apply([](auto* b) { worker_args(b, 100000); })
    ->ArgNames({"records", "threads"})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
