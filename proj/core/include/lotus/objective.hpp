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
#include <span>
#include <vector>

#include "lotus/dataset.hpp"

namespace lotus {

/**
 * Cost of a selection K for query q:
 *
 *   f = (1 - lambda) / |K| * sum_k d2(q, x_k)  -  lambda * min_{i != j} d2(x_i, x_j)
 *
 * search_term is the first summand, diversity_term the second (already
 * negated, so it is <= 0). Lower f is better.
 */
struct CostBreakdown {
  double search_term = 0.0;
  double diversity_term = 0.0;
  double total = 0.0;
};

/// Assembles a CostBreakdown from the raw sum and minimum. Every code path
/// that reports f goes through here so values compare bitwise.
inline CostBreakdown compose_cost(double sum_query_distance, double min_pair_distance,
                                  std::size_t k, double lambda) noexcept {
  CostBreakdown c;
  c.search_term = (1.0 - lambda) * sum_query_distance / static_cast<double>(k);
  c.diversity_term = -lambda * min_pair_distance;
  c.total = c.search_term + c.diversity_term;
  return c;
}

/// Requires at least two distinct, valid IDs and lambda in [0, 1]. Distances
/// are summed in ascending ID order, so the result does not depend on the
/// order of `selection`.
CostBreakdown cost_f(std::span<const float> query, std::span<const Id> selection,
                     const VectorDataset& dataset, double lambda);

struct SubsetOptimum {
  std::vector<Id> ids;  // ascending
  CostBreakdown cost;
};

/// Exhaustive minimizer of cost_f over all k-subsets of `candidates`. Ties go
/// to the lexicographically smallest ID set. Throws std::length_error when
/// C(|candidates|, k) exceeds `max_subsets`.
SubsetOptimum brute_force_optimal(std::span<const float> query, std::span<const Id> candidates,
                                  std::size_t k, const VectorDataset& dataset, double lambda,
                                  std::uint64_t max_subsets = 1'000'000);

/// Greedy max-min (GMM): start from the candidate nearest the query, then
/// repeatedly add the candidate whose nearest selected vector is farthest.
/// Ties go to the smaller ID. Returned in selection order.
std::vector<Id> gmm_baseline(std::span<const float> query, std::span<const Id> candidates,
                             std::size_t k, const VectorDataset& dataset);

/// k-means (k-means++ seeding, at most 25 Lloyd iterations) over the candidate
/// vectors; returns, per centroid, the nearest candidate not already taken.
std::vector<Id> clustering_baseline(std::span<const float> query, std::span<const Id> candidates,
                                    std::size_t k, const VectorDataset& dataset,
                                    std::uint64_t seed);

}  // namespace lotus
