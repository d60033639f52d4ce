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

#include "lotus/neighbor_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace lotus {

namespace {

bool neighbor_less(const Neighbor& a, const Neighbor& b) noexcept {
  return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
}

void check_dim(const VectorDataset& dataset, std::span<const float> v) {
  if (v.size() != dataset.dim()) {
    throw std::invalid_argument("query dimension " + std::to_string(v.size()) +
                                " does not match dataset dimension " +
                                std::to_string(dataset.dim()));
  }
}

std::vector<Neighbor> exhaustive_knn(const VectorDataset& dataset, std::span<const float> query,
                                     std::size_t s) {
  check_dim(dataset, query);
  if (s == 0) throw std::invalid_argument("knn: s must be >= 1");

  const std::size_t n = dataset.size();
  const std::size_t dim = dataset.dim();
  std::vector<Neighbor> all(n);
  for (std::size_t i = 0; i < n; ++i) {
    all[i] = {static_cast<Id>(i),
              detail::squared_distance_unchecked(query.data(), dataset.row(i).data(), dim)};
  }
  const std::size_t keep = std::min(s, n);
  if (keep < n) {
    std::nth_element(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                     neighbor_less);
    all.resize(keep);
  }
  std::sort(all.begin(), all.end(), neighbor_less);
  return all;
}

// Single-precision distance with eight independent partial sums so the loop
// vectorizes. Only used to discard pairs with a generous margin.
float screening_distance(const float* a, const float* b, std::size_t dim) noexcept {
  float acc[8] = {};
  std::size_t d = 0;
  for (; d + 8 <= dim; d += 8) {
    for (std::size_t j = 0; j < 8; ++j) {
      const float diff = a[d + j] - b[d + j];
      acc[j] += diff * diff;
    }
  }
  for (std::size_t j = 0; d < dim; ++d, ++j) {
    const float diff = a[d] - b[d];
    acc[j] += diff * diff;
  }
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7]));
}

// Relative slack covering single-precision rounding for D up to ~10^4.
constexpr double kScreenSlack = 1e-3;

}  // namespace

std::vector<Id> NeighborIndex::range_search_row(Id row, double eps) const {
  if (row >= size()) throw std::out_of_range("range_search_row: row out of range");
  auto ids = range_search(dataset().row(row), eps);
  std::erase(ids, row);
  return ids;
}

std::vector<Neighbor> ExactIndex::knn(std::span<const float> query, std::size_t s) const {
  return exhaustive_knn(*dataset_, query, s);
}

std::vector<Id> ExactIndex::range_search(std::span<const float> point, double eps) const {
  check_dim(*dataset_, point);
  if (!(eps >= 0.0)) throw std::invalid_argument("range_search: eps must be >= 0");
  std::vector<Id> out;
  const std::size_t dim = dataset_->dim();
  for (std::size_t i = 0; i < dataset_->size(); ++i) {
    if (detail::squared_distance_unchecked(point.data(), dataset_->row(i).data(), dim) < eps) {
      out.push_back(static_cast<Id>(i));
    }
  }
  return out;
}

PivotIndex::PivotIndex(const VectorDataset& dataset, PivotIndexOptions options)
    : dataset_(&dataset) {
  const std::size_t n = dataset.size();
  const std::size_t dim = dataset.dim();
  std::size_t n_pivots = options.n_pivots;
  if (n_pivots == 0) n_pivots = static_cast<std::size_t>(std::lround(std::sqrt(double(n))));
  n_pivots = std::clamp<std::size_t>(n_pivots, 1, n);

  std::vector<Id> order(n);
  std::iota(order.begin(), order.end(), Id{0});
  std::mt19937_64 rng(options.seed);
  std::shuffle(order.begin(), order.end(), rng);
  pivots_.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_pivots));
  std::sort(pivots_.begin(), pivots_.end());

  // Assignment quality only affects pruning, never correctness.
  std::vector<std::size_t> owner(n);
  std::vector<std::size_t> counts(n_pivots, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const float* x = dataset.row(i).data();
    std::size_t best = 0;
    float best_d = screening_distance(x, dataset.row(pivots_[0]).data(), dim);
    for (std::size_t p = 1; p < n_pivots; ++p) {
      const float d = screening_distance(x, dataset.row(pivots_[p]).data(), dim);
      if (d < best_d) {
        best_d = d;
        best = p;
      }
    }
    owner[i] = best;
    ++counts[best];
  }

  offsets_.assign(n_pivots + 1, 0);
  for (std::size_t p = 0; p < n_pivots; ++p) offsets_[p + 1] = offsets_[p] + counts[p];
  members_.resize(n);
  radius_.assign(n_pivots, 0.0);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t p = owner[i];
    members_[fill[p]++] = static_cast<Id>(i);
    const double r = std::sqrt(
        detail::squared_distance_unchecked(dataset.row(i).data(), dataset.row(pivots_[p]).data(), dim));
    radius_[p] = std::max(radius_[p], r);
  }
}

std::vector<Neighbor> PivotIndex::knn(std::span<const float> query, std::size_t s) const {
  return exhaustive_knn(*dataset_, query, s);
}

std::vector<Id> PivotIndex::range_search(std::span<const float> point, double eps) const {
  check_dim(*dataset_, point);
  if (!(eps >= 0.0)) throw std::invalid_argument("range_search: eps must be >= 0");
  std::vector<Id> out;
  if (eps == 0.0) return out;

  const std::size_t dim = dataset_->dim();
  const double radius = std::sqrt(eps);
  const double screen = eps * (1.0 + kScreenSlack) + 1e-30;
  for (std::size_t p = 0; p < pivots_.size(); ++p) {
    const double to_pivot =
        std::sqrt(double(screening_distance(point.data(), dataset_->row(pivots_[p]).data(), dim)));
    // Lower bound on any member's distance, loosened by the screening slack.
    if (to_pivot - radius_[p] > radius + kScreenSlack * (to_pivot + radius_[p])) continue;
    for (std::size_t m = offsets_[p]; m < offsets_[p + 1]; ++m) {
      const float* x = dataset_->row(members_[m]).data();
      if (double(screening_distance(point.data(), x, dim)) > screen) continue;
      if (detail::squared_distance_unchecked(point.data(), x, dim) < eps) {
        out.push_back(members_[m]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExactIndex build_index(const VectorDataset& dataset) { return ExactIndex(dataset); }

std::unique_ptr<NeighborIndex> make_index(IndexKind kind, const VectorDataset& dataset) {
  switch (kind) {
    case IndexKind::exact:
      return std::make_unique<ExactIndex>(dataset);
    case IndexKind::pivot:
      return std::make_unique<PivotIndex>(dataset);
  }
  throw std::invalid_argument("unknown index kind");
}

}  // namespace lotus
