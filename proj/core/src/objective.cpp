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

#include "lotus/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace lotus {

namespace {

void check_ids(std::span<const Id> ids, const VectorDataset& dataset, const char* what) {
  for (Id id : ids) {
    if (id >= dataset.size()) {
      throw std::invalid_argument(std::string(what) + ": id " + std::to_string(id) +
                                  " out of range");
    }
  }
}

void check_query(std::span<const float> query, const VectorDataset& dataset) {
  if (query.size() != dataset.dim()) {
    throw std::invalid_argument("query dimension does not match dataset");
  }
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("lambda must lie in [0, 1]");
  }
}

std::vector<Id> sorted_unique(std::span<const Id> ids, const char* what) {
  std::vector<Id> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw std::invalid_argument(std::string(what) + ": duplicate id");
  }
  return out;
}

double dist(const VectorDataset& ds, Id a, Id b) {
  return detail::squared_distance_unchecked(ds.row(a).data(), ds.row(b).data(), ds.dim());
}

double dist(const VectorDataset& ds, std::span<const float> q, Id b) {
  return detail::squared_distance_unchecked(q.data(), ds.row(b).data(), ds.dim());
}

}  // namespace

CostBreakdown cost_f(std::span<const float> query, std::span<const Id> selection,
                     const VectorDataset& dataset, double lambda) {
  check_lambda(lambda);
  check_query(query, dataset);
  if (selection.size() < 2) {
    throw std::invalid_argument("cost_f: need at least two selected ids");
  }
  check_ids(selection, dataset, "cost_f");
  const auto ids = sorted_unique(selection, "cost_f");

  double sum = 0.0;
  for (Id id : ids) sum += dist(dataset, query, id);
  double min_pair = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      min_pair = std::min(min_pair, dist(dataset, ids[i], ids[j]));
    }
  }
  return compose_cost(sum, min_pair, ids.size(), lambda);
}

SubsetOptimum brute_force_optimal(std::span<const float> query, std::span<const Id> candidates,
                                  std::size_t k, const VectorDataset& dataset, double lambda,
                                  std::uint64_t max_subsets) {
  check_lambda(lambda);
  check_query(query, dataset);
  check_ids(candidates, dataset, "brute_force_optimal");
  const auto ids = sorted_unique(candidates, "brute_force_optimal");
  const std::size_t n = ids.size();
  if (k < 2 || k > n) {
    throw std::invalid_argument("brute_force_optimal: need 2 <= k <= |candidates|");
  }

  // C(n, k), stopping as soon as it passes the guard.
  std::uint64_t subsets = 1;
  for (std::size_t i = 1; i <= std::min(k, n - k); ++i) {
    subsets = subsets * (n - std::min(k, n - k) + i) / i;
    if (subsets > max_subsets) {
      throw std::length_error("brute_force_optimal: more than " + std::to_string(max_subsets) +
                              " subsets to enumerate");
    }
  }

  std::vector<double> to_query(n);
  for (std::size_t i = 0; i < n; ++i) to_query[i] = dist(dataset, query, ids[i]);
  std::vector<double> pair(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pair[i * n + j] = pair[j * n + i] = dist(dataset, ids[i], ids[j]);
  }

  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  std::vector<std::size_t> best_pick;
  CostBreakdown best;
  best.total = std::numeric_limits<double>::infinity();

  for (;;) {
    double sum = 0.0;
    double min_pair = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a) {
      sum += to_query[pick[a]];
      for (std::size_t b = a + 1; b < k; ++b) min_pair = std::min(min_pair, pair[pick[a] * n + pick[b]]);
    }
    const auto cost = compose_cost(sum, min_pair, k, lambda);
    if (cost.total < best.total) {
      best = cost;
      best_pick = pick;
    }

    // Next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }

  SubsetOptimum out;
  out.cost = best;
  for (std::size_t p : best_pick) out.ids.push_back(ids[p]);
  return out;
}

std::vector<Id> gmm_baseline(std::span<const float> query, std::span<const Id> candidates,
                             std::size_t k, const VectorDataset& dataset) {
  check_query(query, dataset);
  check_ids(candidates, dataset, "gmm_baseline");
  const auto ids = sorted_unique(candidates, "gmm_baseline");
  const std::size_t n = ids.size();
  if (k == 0 || k > n) throw std::invalid_argument("gmm_baseline: need 1 <= k <= |candidates|");

  // ids is ascending, so strict comparisons keep the smallest ID on ties.
  std::size_t first = 0;
  double first_d = dist(dataset, query, ids[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const double d = dist(dataset, query, ids[i]);
    if (d < first_d) {
      first_d = d;
      first = i;
    }
  }

  std::vector<Id> out{ids[first]};
  std::vector<bool> taken(n, false);
  taken[first] = true;
  std::vector<double> nearest_selected(n);
  for (std::size_t i = 0; i < n; ++i) nearest_selected[i] = dist(dataset, ids[first], ids[i]);

  while (out.size() < k) {
    std::size_t next = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      if (next == n || nearest_selected[i] > nearest_selected[next]) next = i;
    }
    taken[next] = true;
    out.push_back(ids[next]);
    for (std::size_t i = 0; i < n; ++i) {
      if (!taken[i]) nearest_selected[i] = std::min(nearest_selected[i], dist(dataset, ids[next], ids[i]));
    }
  }
  return out;
}

std::vector<Id> clustering_baseline(std::span<const float> query, std::span<const Id> candidates,
                                    std::size_t k, const VectorDataset& dataset,
                                    std::uint64_t seed) {
  constexpr int kMaxIterations = 25;
  check_query(query, dataset);
  check_ids(candidates, dataset, "clustering_baseline");
  const auto ids = sorted_unique(candidates, "clustering_baseline");
  const std::size_t n = ids.size();
  const std::size_t dim = dataset.dim();
  if (k == 0 || k > n) {
    throw std::invalid_argument("clustering_baseline: need 1 <= k <= |candidates|");
  }

  auto point_centroid = [&](std::size_t i, const double* c) {
    const float* x = dataset.row(ids[i]).data();
    double acc = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = static_cast<double>(x[d]) - c[d];
      acc += diff * diff;
    }
    return acc;
  };

  std::mt19937_64 rng(seed);
  std::vector<double> centroids(k * dim);
  auto set_centroid = [&](std::size_t c, std::size_t i) {
    const float* x = dataset.row(ids[i]).data();
    std::copy(x, x + dim, centroids.begin() + static_cast<std::ptrdiff_t>(c * dim));
  };

  // k-means++ seeding.
  std::vector<bool> seeded(n, false);
  std::size_t pick = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  set_centroid(0, pick);
  seeded[pick] = true;
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = point_centroid(i, centroids.data());
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += seeded[i] ? 0.0 : d2[i];
    pick = n;
    if (total > 0.0) {
      double r = std::uniform_real_distribution<double>(0.0, total)(rng);
      for (std::size_t i = 0; i < n; ++i) {
        if (seeded[i] || d2[i] <= 0.0) continue;
        pick = i;
        r -= d2[i];
        if (r < 0.0) break;
      }
    }
    if (pick == n) {
      // Every unseeded point coincides with a centroid; choose uniformly.
      std::vector<std::size_t> open;
      for (std::size_t i = 0; i < n; ++i) {
        if (!seeded[i]) open.push_back(i);
      }
      pick = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
    }
    set_centroid(c, pick);
    seeded[pick] = true;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], point_centroid(i, centroids.data() + c * dim));
    }
  }

  // Lloyd iterations; an empty cluster keeps its previous centroid.
  std::vector<std::size_t> assign(n, k);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = point_centroid(i, centroids.data());
      for (std::size_t c = 1; c < k; ++c) {
        const double d = point_centroid(i, centroids.data() + c * dim);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      changed |= assign[i] != best;
      assign[i] = best;
    }
    if (!changed) break;
    std::vector<double> sums(k * dim, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const float* x = dataset.row(ids[i]).data();
      for (std::size_t d = 0; d < dim; ++d) sums[assign[i] * dim + d] += x[d];
      ++counts[assign[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t d = 0; d < dim; ++d) {
        centroids[c * dim + d] = sums[c * dim + d] / static_cast<double>(counts[c]);
      }
    }
  }

  std::vector<Id> out;
  std::vector<bool> taken(n, false);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t best = n;
    double best_d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double d = point_centroid(i, centroids.data() + c * dim);
      if (best == n || d < best_d) {
        best = i;
        best_d = d;
      }
    }
    taken[best] = true;
    out.push_back(ids[best]);
  }
  return out;
}

}  // namespace lotus
