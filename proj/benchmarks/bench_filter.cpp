/**
 * Copyright (c) 2026 The LotusFilter Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <algorithm>
#include <span>

#include "lotus/cutoff_table.hpp"
#include "lotus/filter.hpp"
#include "lotus/neighbor_index.hpp"
#include "lotus/trainer.hpp"

namespace {

constexpr std::size_t kK = 10;

// Shared fixture: 20k clustered vectors, a table at 1% of the diameter, and
// 400-candidate lists for 64 queries.
struct World {
  lotus::MixtureSpec spec{40, 500, 16, 0.05, 7};
  lotus::VectorDataset base = lotus::generate_synthetic(spec);
  lotus::QuerySet queries = lotus::generate_synthetic_queries(spec, 64, 8);
  lotus::PivotIndex index{base};
  lotus::CutoffTable table =
      lotus::build_cutoff_table(index, 0.01 * lotus::estimate_eps_max(base, 500, 0));
  std::vector<std::vector<lotus::Id>> candidates;

  World() {
    for (std::size_t q = 0; q < queries.size(); ++q) {
      std::vector<lotus::Id> c;
      for (const auto& n : index.knn(queries.row(q), 800)) c.push_back(n.id);
      candidates.push_back(std::move(c));
    }
  }
};

const World& world() {
  static const World w;
  return w;
}

void BM_FilterVaryS(benchmark::State& state) {
  const auto& w = world();
  const auto s = static_cast<std::ptrdiff_t>(state.range(0));
  std::size_t q = 0;
  for (auto _ : state) {
    const auto& c = w.candidates[q++ % w.candidates.size()];
    const std::span<const lotus::Id> head(c.data(), static_cast<std::size_t>(s));
    benchmark::DoNotOptimize(lotus::filter_candidates(head, w.table, kK, true));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FilterVaryS)->RangeMultiplier(2)->Range(50, 800)->Complexity(benchmark::oN);

// The filter never reads vectors, so padding D leaves its cost unchanged.
void BM_FilterVaryD(benchmark::State& state) {
  const auto& w = world();
  const auto dim = static_cast<std::size_t>(state.range(0));
  // Build a zero-padded copy once per D; the table and candidates carry over.
  std::vector<float> padded(w.base.size() * dim, 0.0F);
  for (std::size_t i = 0; i < w.base.size(); ++i) {
    const auto row = w.base.row(i);
    std::copy(row.begin(), row.end(), padded.begin() + static_cast<std::ptrdiff_t>(i * dim));
  }
  const lotus::VectorDataset wide(w.base.size(), dim, std::move(padded));
  benchmark::DoNotOptimize(wide.data());
  std::size_t q = 0;
  for (auto _ : state) {
    const auto& c = w.candidates[q++ % w.candidates.size()];
    const std::span<const lotus::Id> head(c.data(), 200);
    benchmark::DoNotOptimize(lotus::filter_candidates(head, w.table, kK, true));
  }
}
BENCHMARK(BM_FilterVaryD)->Arg(16)->Arg(128)->Arg(512);

void BM_ExactKnn(benchmark::State& state) {
  const auto& w = world();
  const lotus::ExactIndex exact(w.base);
  std::size_t q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact.knn(w.queries.row(q++ % w.queries.size()), 200));
  }
}
BENCHMARK(BM_ExactKnn);

}  // namespace

BENCHMARK_MAIN();
