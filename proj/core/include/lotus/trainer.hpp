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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "lotus/dataset.hpp"
#include "lotus/neighbor_index.hpp"

namespace lotus {

struct TrainConfig {
  double eps_max = 1.0;
  std::vector<std::size_t> widths{10, 10, 10, 10, 100};  // W per round
  double lambda = 0.3;
  std::size_t s_candidates = 100;
  std::size_t k_results = 10;

  [[nodiscard]] std::size_t rounds() const noexcept { return widths.size(); }
  void validate() const;
};

/// Mean cost over the training queries that produced at least two results.
struct ExpectedF {
  double mean_f = 0.0;  // +inf when no query could be scored
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
};

struct GridPoint {
  std::size_t round = 0;
  double eps = 0.0;
  double mean_f = 0.0;
  std::size_t skipped = 0;
};

struct TrainResult {
  double eps_star = 0.0;
  double f_star = 0.0;
  std::vector<GridPoint> trace;  // every grid evaluation, in order
};

/// Largest squared distance among all pairs of min(n_samples, N) distinct
/// rows drawn with `seed`.
double estimate_eps_max(const VectorDataset& dataset, std::size_t n_samples, std::uint64_t seed);

/// Builds the cutoff table at `eps`, runs search_and_filter with the safeguard
/// on for every training query and averages cost_f. This is the reference
/// definition; EpsilonObjective computes the same numbers faster.
ExpectedF expected_f(double eps, const QuerySet& train_queries, const NeighborIndex& index,
                     const TrainConfig& cfg);

/**
 * Cached evaluation of expected_f for many eps values.
 *
 * The knn candidates of each training query do not depend on eps, and the
 * filter only ever consults cutoff entries between candidates. So the
 * candidates, their query distances and their pairwise distances are computed
 * once, and each eps only reruns the greedy filter on that candidate graph.
 * Results are bitwise identical to expected_f.
 *
 * Memory is about 4 * S^2 bytes per training query.
 */
class EpsilonObjective {
 public:
  EpsilonObjective(const QuerySet& train_queries, const NeighborIndex& index, double lambda,
                   std::size_t s_candidates, std::size_t k_results);

  ExpectedF operator()(double eps) const;

  [[nodiscard]] std::size_t n_queries() const noexcept { return sizes_.size(); }

 private:
  struct Entry {
    Id id;
    double to_query;
  };

  double lambda_;
  std::size_t k_;
  std::size_t stride_;                   // S
  std::vector<std::size_t> sizes_;       // candidates per query (<= S)
  std::vector<Entry> candidates_;        // Q x S, nearest first
  std::vector<double> pairs_;            // Q x S(S-1)/2, upper triangle
};

using EpsilonCost = std::function<ExpectedF(double)>;

/**
 * Bracketing search for the eps minimizing `objective` on [0, eps_max].
 *
 * Each round evaluates W+1 equally spaced points of the current interval
 * (both ends included), keeps the best point seen so far, halves the
 * half-width r and re-centers the interval on the best point, clipped to
 * [0, eps_max]. Equal costs keep the smaller eps. Repeated points are served
 * from a cache but still appear in the trace.
 */
TrainResult train_epsilon(const EpsilonCost& objective, const TrainConfig& cfg);

/// train_epsilon over an EpsilonObjective built from `train_queries`.
TrainResult train_epsilon(const QuerySet& train_queries, const NeighborIndex& index,
                          const TrainConfig& cfg);

}  // namespace lotus
