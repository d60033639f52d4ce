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
#include <numeric>
#include <random>
#include <vector>

#include "lotus/ordered_set.hpp"

namespace {

std::vector<lotus::Id> shuffled(std::size_t n, std::uint64_t seed) {
  std::vector<lotus::Id> ids(n);
  std::iota(ids.begin(), ids.end(), lotus::Id{0});
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  return ids;
}

void BM_OrderedSetBuild(benchmark::State& state) {
  const auto ids = shuffled(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    lotus::OrderedSet set(ids);
    benchmark::DoNotOptimize(set.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OrderedSetBuild)->RangeMultiplier(2)->Range(64, 4096)->Complexity(benchmark::oN);

// Pop everything while striking three random ids per pop.
void BM_OrderedSetConsume(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ids = shuffled(n, 2);
  std::mt19937_64 rng(3);
  std::vector<lotus::Id> strikes(3 * n);
  for (auto& s : strikes) s = static_cast<lotus::Id>(rng() % n);
  for (auto _ : state) {
    lotus::OrderedSet set(ids);
    std::size_t next = 0;
    while (!set.empty()) {
      benchmark::DoNotOptimize(set.pop());
      for (int r = 0; r < 3 && next < strikes.size(); ++r) set.remove(strikes[next++]);
    }
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OrderedSetConsume)->RangeMultiplier(2)->Range(64, 4096)->Complexity(benchmark::oN);

}  // namespace
