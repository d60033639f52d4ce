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

// Batch evaluation behind the `eval` and `bench` commands.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "lotus/cutoff_table.hpp"
#include "lotus/dataset.hpp"
#include "lotus/neighbor_index.hpp"

namespace lotus {

enum class Method { none, clustering, gmm, lotus, brute };

std::string_view method_name(Method m) noexcept;
/// Throws std::invalid_argument for an unknown name.
Method parse_method(std::string_view name);

struct EvalConfig {
  double lambda = 0.3;
  std::size_t s_candidates = 100;
  std::size_t k_results = 10;
  bool safeguard = true;
  std::vector<Method> methods{Method::none, Method::clustering, Method::gmm, Method::lotus};
  std::size_t trials = 3;
  std::uint64_t seed = 0;  // k-means seeding
  std::uint64_t brute_max_subsets = 1'000'000;
};

struct MethodRow {
  std::string method;
  // Means over scored queries (at least two results).
  double search_term = 0.0;
  double diversity_term = 0.0;
  double f = 0.0;
  // ms/query: per-query median over trials, averaged over queries.
  double search_ms = 0.0;
  double filter_ms = 0.0;
  double total_ms = 0.0;
  // ms/query: per-query mean over trials, averaged over queries.
  double search_ms_mean = 0.0;
  double filter_ms_mean = 0.0;
  double total_ms_mean = 0.0;
  std::uint64_t memory_bits = 0;
  double truncation_rate = 0.0;
  std::size_t scored = 0;
  std::size_t skipped = 0;
  // Diversity split by whether the result was truncated (lotus only).
  std::size_t untruncated = 0;
  double diversity_term_untruncated = 0.0;
  double diversity_term_truncated = 0.0;
};

struct EvalReport {
  std::size_t n_vectors = 0;
  std::size_t dim = 0;
  std::size_t n_queries = 0;
  double epsilon = 0.0;
  double avg_list_length = 0.0;
  EvalConfig config;
  std::vector<MethodRow> rows;  // same order as config.methods
};

/// Runs every configured method on every query. `table` is required when
/// the lotus method is requested. Timing: one untimed warm-up pass, then
/// `config.trials` timed passes.
EvalReport evaluate(const QuerySet& queries, const NeighborIndex& index,
                    const CutoffTable* table, const EvalConfig& config);

std::string to_json(const EvalReport& report, int indent = 2);
std::string format_table(const EvalReport& report);

struct BenchConfig {
  std::vector<std::size_t> s_values{100, 200, 400};
  std::size_t k_results = 10;
  double lambda = 0.3;
  bool safeguard = true;
  std::size_t repeats = 5;  // timed batch repetitions; the median is reported
};

struct BenchPoint {
  std::size_t s = 0;
  double epsilon = 0.0;
  double avg_list_length = 0.0;
  double search_ms = 0.0;  // median batch time / queries
  double filter_ms = 0.0;  // median batch time / queries
  double mean_f = 0.0;
  double f_stderr = 0.0;
  double truncation_rate = 0.0;
  std::size_t scored = 0;
};

struct BenchReport {
  std::size_t n_vectors = 0;
  std::size_t dim = 0;
  std::size_t n_queries = 0;
  BenchConfig config;
  std::vector<BenchPoint> points;
  // filter_ms(2S) / filter_ms(S) for every S whose double was also swept.
  std::vector<std::pair<std::size_t, double>> doubling_ratios;
};

/// Supplies the cutoff table used at a given S (a fixed table, or one
/// trained per S).
using TableForS = std::function<const CutoffTable&(std::size_t s)>;

BenchReport bench_scaling(const QuerySet& queries, const NeighborIndex& index,
                          const TableForS& table_for_s, const BenchConfig& config);

/// Median wall time (ms) of running the filter over precomputed candidate
/// lists, one batch per repeat.
double time_filter_batch(const std::vector<std::vector<Id>>& candidates, const CutoffTable& table,
                         std::size_t k, bool safeguard, std::size_t repeats);

std::string to_json(const BenchReport& report, int indent = 2);
std::string format_table(const BenchReport& report);

}  // namespace lotus
