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

#include "lotus/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "lotus/cutoff_table.hpp"
#include "lotus/filter.hpp"
#include "lotus/objective.hpp"

namespace lotus {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Index of (a, b), a < b, in a packed upper triangle of an n x n matrix.
std::size_t packed(std::size_t a, std::size_t b, std::size_t n) noexcept {
  return a * n - a * (a + 1) / 2 + (b - a - 1);
}

ExpectedF finish_mean(double sum, std::size_t evaluated, std::size_t skipped) {
  return {evaluated == 0 ? kInf : sum / static_cast<double>(evaluated), evaluated, skipped};
}

}  // namespace

void TrainConfig::validate() const {
  if (!(eps_max > 0.0) || !std::isfinite(eps_max)) {
    throw std::invalid_argument("train config: eps_max must be finite and > 0");
  }
  if (widths.empty()) throw std::invalid_argument("train config: need at least one round");
  if (std::find(widths.begin(), widths.end(), std::size_t{0}) != widths.end()) {
    throw std::invalid_argument("train config: every width W must be >= 1");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("train config: lambda must lie in [0, 1]");
  }
  if (k_results == 0 || k_results > s_candidates) {
    throw std::invalid_argument("train config: need 1 <= K <= S");
  }
}

double estimate_eps_max(const VectorDataset& dataset, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 2) throw std::invalid_argument("estimate_eps_max: n_samples must be >= 2");
  std::vector<Id> rows(dataset.size());
  std::iota(rows.begin(), rows.end(), Id{0});
  std::mt19937_64 rng(seed);
  std::shuffle(rows.begin(), rows.end(), rng);
  rows.resize(std::min(n_samples, rows.size()));

  double best = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      best = std::max(best, squared_distance(dataset.row(rows[i]), dataset.row(rows[j])));
    }
  }
  return best;
}

ExpectedF expected_f(double eps, const QuerySet& train_queries, const NeighborIndex& index,
                     const TrainConfig& cfg) {
  if (!(eps >= 0.0)) throw std::invalid_argument("expected_f: eps must be >= 0");
  const auto table = build_cutoff_table(index, eps);
  const FilterParams params{cfg.s_candidates, cfg.k_results, true};

  double sum = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  for (std::size_t q = 0; q < train_queries.size(); ++q) {
    const auto query = train_queries.row(q);
    const auto result = search_and_filter(query, index, table, params);
    if (result.ids.size() < 2) {
      ++skipped;
      continue;
    }
    sum += cost_f(query, result.ids, index.dataset(), cfg.lambda).total;
    ++evaluated;
  }
  return finish_mean(sum, evaluated, skipped);
}

EpsilonObjective::EpsilonObjective(const QuerySet& train_queries, const NeighborIndex& index,
                                   double lambda, std::size_t s_candidates, std::size_t k_results)
    : lambda_(lambda), k_(k_results), stride_(s_candidates) {
  TrainConfig probe;
  probe.lambda = lambda;
  probe.s_candidates = s_candidates;
  probe.k_results = k_results;
  probe.validate();

  const auto& dataset = index.dataset();
  const std::size_t q_count = train_queries.size();
  const std::size_t tri = stride_ * (stride_ - 1) / 2;
  sizes_.resize(q_count);
  candidates_.resize(q_count * stride_);
  pairs_.resize(q_count * tri);

  for (std::size_t q = 0; q < q_count; ++q) {
    const auto hits = index.knn(train_queries.row(q), stride_);
    const std::size_t m = hits.size();
    sizes_[q] = m;
    Entry* entries = candidates_.data() + q * stride_;
    for (std::size_t a = 0; a < m; ++a) entries[a] = {hits[a].id, hits[a].distance};
    double* pair = pairs_.data() + q * tri;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        pair[packed(a, b, stride_)] = detail::squared_distance_unchecked(
            dataset.row(entries[a].id).data(), dataset.row(entries[b].id).data(), dataset.dim());
      }
    }
  }
}

ExpectedF EpsilonObjective::operator()(double eps) const {
  if (!(eps >= 0.0)) throw std::invalid_argument("EpsilonObjective: eps must be >= 0");
  const std::size_t tri = stride_ * (stride_ - 1) / 2;

  std::vector<Id> local(stride_);
  std::iota(local.begin(), local.end(), Id{0});
  std::vector<Id> scratch;
  scratch.reserve(stride_);
  std::vector<std::pair<Id, std::size_t>> picked;

  double sum = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  for (std::size_t q = 0; q < sizes_.size(); ++q) {
    const std::size_t m = sizes_[q];
    const Entry* entries = candidates_.data() + q * stride_;
    const double* pair = pairs_.data() + q * tri;
    auto pair_at = [&](std::size_t a, std::size_t b) {
      return a < b ? pair[packed(a, b, stride_)] : pair[packed(b, a, stride_)];
    };

    // Candidates are renamed to their knn rank 0..m-1; the greedy filter only
    // depends on order and on the cutoff relation, so this is equivalent.
    auto neighbors_of = [&](Id a) -> const std::vector<Id>& {
      scratch.clear();
      for (std::size_t b = 0; b < m; ++b) {
        if (b != a && pair_at(a, b) < eps) scratch.push_back(static_cast<Id>(b));
      }
      return scratch;
    };
    const auto result = detail::greedy_filter(std::span<const Id>(local.data(), m), k_, true,
                                              neighbors_of);
    if (result.ids.size() < 2) {
      ++skipped;
      continue;
    }

    // Same arithmetic as cost_f: query distances summed in ascending ID order.
    picked.clear();
    for (Id a : result.ids) picked.emplace_back(entries[a].id, a);
    std::sort(picked.begin(), picked.end());
    double to_query = 0.0;
    double min_pair = kInf;
    for (std::size_t i = 0; i < picked.size(); ++i) {
      to_query += entries[picked[i].second].to_query;
      for (std::size_t j = i + 1; j < picked.size(); ++j) {
        min_pair = std::min(min_pair, pair_at(picked[i].second, picked[j].second));
      }
    }
    sum += compose_cost(to_query, min_pair, picked.size(), lambda_).total;
    ++evaluated;
  }
  return finish_mean(sum, evaluated, skipped);
}

TrainResult train_epsilon(const EpsilonCost& objective, const TrainConfig& cfg) {
  cfg.validate();
  TrainResult out;
  out.eps_star = kInf;
  out.f_star = kInf;
  std::map<double, ExpectedF> seen;

  double left = 0.0;
  double right = cfg.eps_max;
  double r = right - left;
  for (std::size_t round = 0; round < cfg.rounds(); ++round) {
    const std::size_t w = cfg.widths[round];
    for (std::size_t i = 0; i <= w; ++i) {
      const double eps = i == w ? right : left + static_cast<double>(i) * (right - left) / static_cast<double>(w);
      auto it = seen.find(eps);
      if (it == seen.end()) it = seen.emplace(eps, objective(eps)).first;
      const ExpectedF& value = it->second;
      out.trace.push_back({round, eps, value.mean_f, value.skipped});
      if (value.mean_f < out.f_star || (value.mean_f == out.f_star && eps < out.eps_star)) {
        out.f_star = value.mean_f;
        out.eps_star = eps;
      }
    }
    r /= 2.0;
    left = std::max(out.eps_star - r, 0.0);
    right = std::min(out.eps_star + r, cfg.eps_max);
  }
  return out;
}

TrainResult train_epsilon(const QuerySet& train_queries, const NeighborIndex& index,
                          const TrainConfig& cfg) {
  cfg.validate();
  const EpsilonObjective objective(train_queries, index, cfg.lambda, cfg.s_candidates,
                                   cfg.k_results);
  return train_epsilon([&objective](double eps) { return objective(eps); }, cfg);
}

}  // namespace lotus
