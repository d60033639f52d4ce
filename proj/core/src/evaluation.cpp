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

#include "lotus/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lotus/filter.hpp"
#include "lotus/objective.hpp"

namespace lotus {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::vector<Id> ids_of(const std::vector<Neighbor>& hits) {
  std::vector<Id> out(hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) out[i] = hits[i].id;
  return out;
}

struct MethodOutput {
  std::vector<Id> ids;
  bool truncated = false;
};

MethodOutput run_method(Method method, std::span<const float> query,
                        const std::vector<Id>& candidates, const NeighborIndex& index,
                        const CutoffTable* table, const EvalConfig& cfg) {
  const std::size_t k = std::min(cfg.k_results, candidates.size());
  const auto& ds = index.dataset();
  MethodOutput out;
  switch (method) {
    case Method::none:
      out.ids.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k));
      out.truncated = k < cfg.k_results;
      break;
    case Method::lotus: {
      auto r = filter_candidates(candidates, *table, cfg.k_results, cfg.safeguard);
      out.ids = std::move(r.ids);
      out.truncated = r.truncated;
      break;
    }
    case Method::gmm:
      out.ids = gmm_baseline(query, candidates, k, ds);
      out.truncated = k < cfg.k_results;
      break;
    case Method::clustering:
      out.ids = clustering_baseline(query, candidates, k, ds, cfg.seed);
      out.truncated = k < cfg.k_results;
      break;
    case Method::brute:
      if (k < 2) {
        out.ids = candidates;
      } else {
        out.ids = brute_force_optimal(query, candidates, k, ds, cfg.lambda, cfg.brute_max_subsets).ids;
      }
      out.truncated = k < cfg.k_results;
      break;
  }
  return out;
}

std::uint64_t memory_for(Method method, const VectorDataset& ds, const CutoffTable* table) {
  switch (method) {
    case Method::none:
      return 0;
    case Method::lotus:
      return memory_bits(*table);
    case Method::clustering:
    case Method::gmm:
    case Method::brute:
      return std::uint64_t{32} * ds.size() * ds.dim();
  }
  return 0;
}

}  // namespace

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::none: return "none";
    case Method::clustering: return "clustering";
    case Method::gmm: return "gmm";
    case Method::lotus: return "lotus";
    case Method::brute: return "brute";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::none, Method::clustering, Method::gmm, Method::lotus, Method::brute}) {
    if (method_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected none, clustering, gmm, lotus or brute)");
}

EvalReport evaluate(const QuerySet& queries, const NeighborIndex& index, const CutoffTable* table,
                    const EvalConfig& cfg) {
  FilterParams{cfg.s_candidates, cfg.k_results, cfg.safeguard}.validate();
  if (!(cfg.lambda >= 0.0 && cfg.lambda <= 1.0)) {
    throw std::invalid_argument("eval: lambda must lie in [0, 1]");
  }
  if (cfg.trials == 0) throw std::invalid_argument("eval: trials must be >= 1");
  const auto& ds = index.dataset();
  if (queries.dim() != ds.dim()) throw std::invalid_argument("eval: query dimension mismatch");
  const bool wants_lotus =
      std::find(cfg.methods.begin(), cfg.methods.end(), Method::lotus) != cfg.methods.end();
  if (wants_lotus && table == nullptr) throw std::invalid_argument("eval: lotus needs a cutoff table");
  if (table != nullptr && table->size() != ds.size()) {
    throw std::invalid_argument("eval: cutoff table does not match the dataset");
  }

  const std::size_t nq = queries.size();
  const std::size_t nm = cfg.methods.size();

  // Warm-up pass, also the source of the (deterministic) result sets.
  std::vector<std::vector<Id>> candidates(nq);
  std::vector<std::vector<MethodOutput>> outputs(nm, std::vector<MethodOutput>(nq));
  for (std::size_t q = 0; q < nq; ++q) {
    candidates[q] = ids_of(index.knn(queries.row(q), cfg.s_candidates));
    for (std::size_t m = 0; m < nm; ++m) {
      outputs[m][q] = run_method(cfg.methods[m], queries.row(q), candidates[q], index, table, cfg);
    }
  }

  // search_times[q][t], filter_times[m][q][t]
  std::vector<std::vector<double>> search_times(nq, std::vector<double>(cfg.trials));
  std::vector<std::vector<std::vector<double>>> filter_times(
      nm, std::vector<std::vector<double>>(nq, std::vector<double>(cfg.trials)));
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    for (std::size_t q = 0; q < nq; ++q) {
      auto start = Clock::now();
      const auto hits = index.knn(queries.row(q), cfg.s_candidates);
      search_times[q][t] = elapsed_ms(start);
      const auto cand = ids_of(hits);
      for (std::size_t m = 0; m < nm; ++m) {
        start = Clock::now();
        const auto out = run_method(cfg.methods[m], queries.row(q), cand, index, table, cfg);
        filter_times[m][q][t] = elapsed_ms(start);
        if (out.ids.empty()) throw std::logic_error("eval: method returned nothing");
      }
    }
  }

  EvalReport report;
  report.n_vectors = ds.size();
  report.dim = ds.dim();
  report.n_queries = nq;
  report.config = cfg;
  if (table != nullptr) {
    report.epsilon = table->epsilon();
    report.avg_list_length = avg_list_length(*table);
  }

  std::vector<double> search_median(nq), search_mean(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    search_median[q] = median(search_times[q]);
    search_mean[q] = mean(search_times[q]);
  }

  for (std::size_t m = 0; m < nm; ++m) {
    MethodRow row;
    row.method = std::string(method_name(cfg.methods[m]));
    row.memory_bits = memory_for(cfg.methods[m], ds, table);

    std::vector<double> filter_median(nq), filter_mean(nq), total_median(nq), total_mean(nq);
    for (std::size_t q = 0; q < nq; ++q) {
      std::vector<double> totals(cfg.trials);
      for (std::size_t t = 0; t < cfg.trials; ++t) totals[t] = search_times[q][t] + filter_times[m][q][t];
      filter_median[q] = median(filter_times[m][q]);
      filter_mean[q] = mean(filter_times[m][q]);
      total_median[q] = median(totals);
      total_mean[q] = mean(totals);
    }
    row.search_ms = mean(search_median);
    row.filter_ms = mean(filter_median);
    row.total_ms = mean(total_median);
    row.search_ms_mean = mean(search_mean);
    row.filter_ms_mean = mean(filter_mean);
    row.total_ms_mean = mean(total_mean);

    std::size_t truncated = 0;
    double div_untrunc = 0.0, div_trunc = 0.0;
    std::size_t n_trunc_scored = 0;
    for (std::size_t q = 0; q < nq; ++q) {
      const auto& out = outputs[m][q];
      truncated += out.truncated ? 1 : 0;
      if (out.ids.size() < 2) {
        ++row.skipped;
        continue;
      }
      const auto cost = cost_f(queries.row(q), out.ids, ds, cfg.lambda);
      row.search_term += cost.search_term;
      row.diversity_term += cost.diversity_term;
      row.f += cost.total;
      ++row.scored;
      if (out.truncated) {
        div_trunc += cost.diversity_term;
        ++n_trunc_scored;
      } else {
        div_untrunc += cost.diversity_term;
        ++row.untruncated;
      }
    }
    if (row.scored > 0) {
      const double s = static_cast<double>(row.scored);
      row.search_term /= s;
      row.diversity_term /= s;
      row.f /= s;
    }
    if (row.untruncated > 0) row.diversity_term_untruncated = div_untrunc / double(row.untruncated);
    if (n_trunc_scored > 0) row.diversity_term_truncated = div_trunc / double(n_trunc_scored);
    row.truncation_rate = static_cast<double>(truncated) / static_cast<double>(nq);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string to_json(const EvalReport& report, int indent) {
  nlohmann::ordered_json j;
  j["kind"] = "eval";
  j["n_vectors"] = report.n_vectors;
  j["dim"] = report.dim;
  j["n_queries"] = report.n_queries;
  j["epsilon"] = report.epsilon;
  j["avg_list_length"] = report.avg_list_length;
  const auto& c = report.config;
  j["config"] = {{"lambda", c.lambda},       {"s", c.s_candidates}, {"k", c.k_results},
                 {"safeguard", c.safeguard}, {"trials", c.trials},  {"seed", c.seed}};
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"method", r.method},
                    {"search_term", r.search_term},
                    {"diversity_term", r.diversity_term},
                    {"f", r.f},
                    {"search_ms", r.search_ms},
                    {"filter_ms", r.filter_ms},
                    {"total_ms", r.total_ms},
                    {"search_ms_mean", r.search_ms_mean},
                    {"filter_ms_mean", r.filter_ms_mean},
                    {"total_ms_mean", r.total_ms_mean},
                    {"memory_bits", r.memory_bits},
                    {"truncation_rate", r.truncation_rate},
                    {"scored", r.scored},
                    {"skipped", r.skipped},
                    {"untruncated", r.untruncated},
                    {"diversity_term_untruncated", r.diversity_term_untruncated},
                    {"diversity_term_truncated", r.diversity_term_truncated}});
  }
  j["rows"] = std::move(rows);
  return j.dump(indent);
}

std::string format_table(const EvalReport& report) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "N=%zu D=%zu queries=%zu lambda=%.3g S=%zu K=%zu eps=%.6g L=%.3f\n",
                report.n_vectors, report.dim, report.n_queries, report.config.lambda,
                report.config.s_candidates, report.config.k_results, report.epsilon,
                report.avg_list_length);
  os << line;
  std::snprintf(line, sizeof line, "%-11s %11s %11s %11s %10s %10s %10s %12s %7s\n", "method",
                "search", "divers.", "f", "search_ms", "filter_ms", "total_ms", "memory_bits",
                "trunc");
  os << line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%-11s %11.5f %11.5f %11.5f %10.4f %10.4f %10.4f %12.4g %7.3f\n",
                  r.method.c_str(), r.search_term, r.diversity_term, r.f, r.search_ms, r.filter_ms,
                  r.total_ms, static_cast<double>(r.memory_bits), r.truncation_rate);
    os << line;
  }
  return os.str();
}

double time_filter_batch(const std::vector<std::vector<Id>>& candidates, const CutoffTable& table,
                         std::size_t k, bool safeguard, std::size_t repeats) {
  std::vector<double> times;
  std::size_t sink = 0;
  for (std::size_t r = 0; r < std::max<std::size_t>(repeats, 1); ++r) {
    const auto start = Clock::now();
    for (const auto& c : candidates) sink += filter_candidates(c, table, k, safeguard).ids.size();
    times.push_back(elapsed_ms(start));
  }
  if (sink == 0 && !candidates.empty()) throw std::logic_error("filter produced no output");
  return median(times);
}

BenchReport bench_scaling(const QuerySet& queries, const NeighborIndex& index,
                          const TableForS& table_for_s, const BenchConfig& cfg) {
  const auto& ds = index.dataset();
  if (queries.dim() != ds.dim()) throw std::invalid_argument("bench: query dimension mismatch");
  if (cfg.s_values.empty()) throw std::invalid_argument("bench: no S values");

  BenchReport report;
  report.n_vectors = ds.size();
  report.dim = ds.dim();
  report.n_queries = queries.size();
  report.config = cfg;
  const double nq = static_cast<double>(queries.size());

  for (std::size_t s : cfg.s_values) {
    FilterParams{s, cfg.k_results, cfg.safeguard}.validate();
    const CutoffTable& table = table_for_s(s);
    if (table.size() != ds.size()) throw std::invalid_argument("bench: table does not match dataset");

    BenchPoint p;
    p.s = s;
    p.epsilon = table.epsilon();
    p.avg_list_length = avg_list_length(table);

    std::vector<std::vector<Id>> candidates(queries.size());
    std::vector<double> search_batches;
    for (std::size_t r = 0; r < std::max<std::size_t>(1, std::min<std::size_t>(cfg.repeats, 3)); ++r) {
      const auto start = Clock::now();
      for (std::size_t q = 0; q < queries.size(); ++q) {
        candidates[q] = ids_of(index.knn(queries.row(q), s));
      }
      search_batches.push_back(elapsed_ms(start));
    }
    p.search_ms = median(search_batches) / nq;
    time_filter_batch(candidates, table, cfg.k_results, cfg.safeguard, 1);  // warm-up
    p.filter_ms = time_filter_batch(candidates, table, cfg.k_results, cfg.safeguard, cfg.repeats) / nq;

    std::vector<double> fs;
    std::size_t truncated = 0;
    for (std::size_t q = 0; q < queries.size(); ++q) {
      const auto res = filter_candidates(candidates[q], table, cfg.k_results, cfg.safeguard);
      truncated += res.truncated ? 1 : 0;
      if (res.ids.size() >= 2) fs.push_back(cost_f(queries.row(q), res.ids, ds, cfg.lambda).total);
    }
    p.scored = fs.size();
    p.mean_f = mean(fs);
    if (fs.size() > 1) {
      double var = 0.0;
      for (double f : fs) var += (f - p.mean_f) * (f - p.mean_f);
      var /= static_cast<double>(fs.size() - 1);
      p.f_stderr = std::sqrt(var / static_cast<double>(fs.size()));
    }
    p.truncation_rate = static_cast<double>(truncated) / nq;
    report.points.push_back(p);
  }

  for (const auto& a : report.points) {
    for (const auto& b : report.points) {
      if (b.s == 2 * a.s && a.filter_ms > 0.0) report.doubling_ratios.emplace_back(a.s, b.filter_ms / a.filter_ms);
    }
  }
  return report;
}

std::string to_json(const BenchReport& report, int indent) {
  nlohmann::ordered_json j;
  j["kind"] = "bench";
  j["n_vectors"] = report.n_vectors;
  j["dim"] = report.dim;
  j["n_queries"] = report.n_queries;
  const auto& c = report.config;
  j["config"] = {{"s_values", c.s_values}, {"k", c.k_results},           {"lambda", c.lambda},
                 {"safeguard", c.safeguard}, {"repeats", c.repeats}};
  auto points = nlohmann::ordered_json::array();
  for (const auto& p : report.points) {
    points.push_back({{"s", p.s},
                      {"epsilon", p.epsilon},
                      {"avg_list_length", p.avg_list_length},
                      {"search_ms", p.search_ms},
                      {"filter_ms", p.filter_ms},
                      {"mean_f", p.mean_f},
                      {"f_stderr", p.f_stderr},
                      {"truncation_rate", p.truncation_rate},
                      {"scored", p.scored}});
  }
  j["points"] = std::move(points);
  auto ratios = nlohmann::ordered_json::array();
  for (const auto& [s, ratio] : report.doubling_ratios) ratios.push_back({{"s", s}, {"ratio", ratio}});
  j["doubling_ratios"] = std::move(ratios);
  return j.dump(indent);
}

std::string format_table(const BenchReport& report) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "N=%zu D=%zu queries=%zu K=%zu lambda=%.3g\n", report.n_vectors,
                report.dim, report.n_queries, report.config.k_results, report.config.lambda);
  os << line;
  std::snprintf(line, sizeof line, "%6s %12s %8s %11s %11s %12s %10s %7s\n", "S", "eps", "L",
                "search_ms", "filter_ms", "mean_f", "stderr", "trunc");
  os << line;
  for (const auto& p : report.points) {
    std::snprintf(line, sizeof line, "%6zu %12.6g %8.3f %11.5f %11.6f %12.6f %10.6f %7.3f\n", p.s,
                  p.epsilon, p.avg_list_length, p.search_ms, p.filter_ms, p.mean_f, p.f_stderr,
                  p.truncation_rate);
    os << line;
  }
  for (const auto& [s, ratio] : report.doubling_ratios) {
    std::snprintf(line, sizeof line, "filter time S=%zu -> %zu: x%.3f\n", s, 2 * s, ratio);
    os << line;
  }
  return os.str();
}

}  // namespace lotus
