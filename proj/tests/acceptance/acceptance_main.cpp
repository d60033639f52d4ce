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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Pass criterion names as arguments to run
// a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lotus/cutoff_table.hpp"
#include "lotus/dataset.hpp"
#include "lotus/evaluation.hpp"
#include "lotus/filter.hpp"
#include "lotus/neighbor_index.hpp"
#include "lotus/objective.hpp"
#include "lotus/ordered_set.hpp"
#include "lotus/trainer.hpp"
#include "oracles.hpp"

namespace {

using namespace lotus;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
}

std::vector<Id> ids_of(const std::vector<Neighbor>& hits) {
  std::vector<Id> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(h.id);
  return out;
}

std::vector<std::vector<Id>> lists_of(const CutoffTable& t) {
  std::vector<std::vector<Id>> out;
  for (Id n = 0; n < t.size(); ++n) out.emplace_back(t.list(n).begin(), t.list(n).end());
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// ---------------------------------------------------------------------------
// Shared clustered benchmark: N = 10^4, D = 16.

struct Bench16 {
  MixtureSpec spec{50, 200, 16, 0.05, 2026};
  VectorDataset base = generate_synthetic(spec);
  QuerySet test = generate_synthetic_queries(spec, 1000, 7);
  QuerySet train = base.head(1000);
  ExactIndex index{base};
  double eps_max = estimate_eps_max(base, 1000, 0);
};

const Bench16& bench16() {
  static const Bench16 b;
  return b;
}

// ---------------------------------------------------------------------------

Outcome diversity_bound() {
  const auto t0 = Clock::now();
  std::size_t violations = 0, pairs = 0, multi = 0;
  for (std::uint64_t inst = 0; inst < 1000; ++inst) {
    std::mt19937_64 rng(1000 + inst);
    const MixtureSpec spec{10, 50, 8, 0.1, inst};
    const auto ds = generate_synthetic(spec);
    const ExactIndex index(ds);
    const double far = estimate_eps_max(ds, ds.size(), inst);
    const double eps = far * log_uniform(rng, 1e-4, 1.0);
    const auto table = build_cutoff_table(index, eps);
    const auto q = generate_synthetic_queries(spec, 1, inst + 7);
    const std::size_t s = 1 + rng() % 200;
    const std::size_t k = 1 + rng() % s;
    const auto res = search_and_filter(q.row(0), index, table, {s, k, false});
    multi += res.ids.size() >= 2 ? 1 : 0;
    for (std::size_t a = 0; a < res.ids.size(); ++a) {
      for (std::size_t b = a + 1; b < res.ids.size(); ++b) {
        ++pairs;
        if (testing::oracle_sq_dist(ds, res.ids[a], res.ids[b]) < eps) ++violations;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs < 30.0 && multi > 0,
          fmt("1000 instances, %zu pairs checked, %zu violations, %zu multi-result, %.1fs (< 30s)",
              pairs, violations, multi, secs)};
}

Outcome naive_equivalence() {
  const MixtureSpec spec{12, 25, 4, 0.05, 77};
  const auto ds = generate_synthetic(spec);
  const ExactIndex index(ds);
  const double far = estimate_eps_max(ds, ds.size(), 0);
  const auto queries = generate_synthetic_queries(spec, 1000, 78);
  std::mt19937_64 rng(79);

  std::size_t same = 0, kinds[3] = {0, 0, 0};
  for (std::size_t inst = 0; inst < 1000; ++inst) {
    double eps = 0.0;  // empty table
    const int kind = static_cast<int>(inst % 5 == 0 ? 0 : inst % 5 == 1 ? 1 : 2);
    if (kind == 1) eps = std::nextafter(far, 2.0 * far) * 1.01;  // complete table
    if (kind == 2) eps = far * log_uniform(rng, 1e-4, 1.0);
    ++kinds[kind];
    const auto table = build_cutoff_table(index, eps);
    const auto lists = lists_of(table);
    const std::size_t s = 1 + rng() % 200;
    const std::size_t k = 1 + rng() % s;
    const auto cand = ids_of(index.knn(queries.row(inst), s));
    bool ok = true;
    for (bool guard : {false, true}) {
      const auto got = filter_candidates(cand, table, k, guard);
      const auto want = testing::naive_filter(cand, lists, k, guard);
      ok = ok && got.ids == want.ids && got.truncated == want.truncated;
    }
    same += ok ? 1 : 0;
  }
  return {same == 1000, fmt("%zu/1000 identical (empty=%zu complete=%zu random=%zu tables)", same,
                            kinds[0], kinds[1], kinds[2])};
}

Outcome ordered_set_differential() {
  std::mt19937_64 rng(4242);
  std::size_t matched = 0, worst_ratio_num = 0, worst_ratio_den = 1;
  bool amortized = true;
  for (int trace = 0; trace < 10000; ++trace) {
    const std::size_t v = 1 + rng() % 100;
    std::vector<Id> ids(4 * v);
    std::iota(ids.begin(), ids.end(), Id{0});
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(v);
    OrderedSet set(ids);
    testing::TombstoneSet oracle(ids);
    bool ok = true;
    const int ops = 1 + static_cast<int>(rng() % 150);
    for (int op = 0; op < ops && ok; ++op) {
      switch (rng() % 8) {
        case 0:
        case 1:
        case 2:
          if (set.empty()) {
            ok = oracle.size() == 0;
          } else {
            const auto want = oracle.pop();
            ok = want.has_value() && set.pop() == *want;
          }
          break;
        case 3:
        case 4:
        case 5: {
          const Id id = static_cast<Id>(rng() % (4 * v));
          oracle.remove(id);
          set.remove(id);
          break;
        }
        case 6:
          ok = set.size() == oracle.size();
          break;
        default:
          ok = set.drain_in_order() == oracle.drain();
          break;
      }
      ok = ok && set.size() == oracle.size();
    }
    // Finish the consumption and check the cursor bound.
    while (ok && !set.empty()) {
      const auto want = oracle.pop();
      ok = want.has_value() && set.pop() == *want;
    }
    ok = ok && oracle.size() == 0;
    if (set.cursor_advances() > v) amortized = false;
    if (set.cursor_advances() * worst_ratio_den > worst_ratio_num * v) {
      worst_ratio_num = set.cursor_advances();
      worst_ratio_den = v;
    }
    matched += ok ? 1 : 0;
  }
  return {matched == 10000 && amortized,
          fmt("%zu/10000 traces match; max cursor advances / V = %zu/%zu", matched, worst_ratio_num,
              worst_ratio_den)};
}

Outcome exact_oracle() {
  const MixtureSpec spec{20, 100, 8, 0.05, 31};
  const auto ds = generate_synthetic(spec);
  const ExactIndex index(ds);
  const auto queries = generate_synthetic_queries(spec, 200, 32);
  std::mt19937_64 rng(33);

  std::size_t ok = 0, untruncated = 0, bound_ok = 0;
  for (std::size_t inst = 0; inst < 200; ++inst) {
    const auto q = queries.row(inst);
    const auto cand = ids_of(index.knn(q, 10));
    const double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double typical = 0.0;
    for (std::size_t a = 1; a < cand.size(); ++a) typical += testing::oracle_sq_dist(ds, cand[0], cand[a]);
    typical /= double(cand.size() - 1);
    const double eps = typical * log_uniform(rng, 0.01, 2.0);
    const auto table = build_cutoff_table(index, eps);

    const auto best = brute_force_optimal(q, cand, 3, ds, lambda);
    const auto lotus = filter_candidates(cand, table, 3, true);
    const double f_lotus = cost_f(q, lotus.ids, ds, lambda).total;
    const double f_gmm = cost_f(q, gmm_baseline(q, cand, 3, ds), ds, lambda).total;
    const double f_clu = cost_f(q, clustering_baseline(q, cand, 3, ds, inst), ds, lambda).total;
    const bool dominated = best.cost.total <= f_lotus && best.cost.total <= f_gmm && best.cost.total <= f_clu;
    bool bound = true;
    if (!lotus.truncated) {
      ++untruncated;
      bound = cost_f(q, lotus.ids, ds, lambda).diversity_term <= -lambda * eps;
      bound_ok += bound ? 1 : 0;
    }
    ok += dominated && bound ? 1 : 0;
  }
  return {ok == 200 && untruncated > 0,
          fmt("%zu/200 instances brute <= lotus, gmm, clustering; diversity bound held in %zu/%zu "
              "untruncated",
              ok, bound_ok, untruncated)};
}

Outcome top1_preservation() {
  const MixtureSpec spec{20, 100, 8, 0.05, 51};
  const auto ds = generate_synthetic(spec);
  const ExactIndex index(ds);
  const double far = estimate_eps_max(ds, 500, 0);
  const auto queries = generate_synthetic_queries(spec, 1000, 52);
  std::mt19937_64 rng(53);
  std::vector<CutoffTable> tables;
  for (int t = 0; t < 10; ++t) tables.push_back(build_cutoff_table(index, far * log_uniform(rng, 1e-4, 1.0)));

  std::size_t kept = 0;
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const auto& table = tables[rng() % tables.size()];
    const std::size_t s = 1 + rng() % 200;
    const std::size_t k = 1 + rng() % s;
    const bool guard = rng() % 2 == 0;
    const auto res = search_and_filter(queries.row(qi), index, table, {s, k, guard});
    const auto nearest = index.knn(queries.row(qi), 1).front().id;
    kept += !res.ids.empty() && res.ids.front() == nearest ? 1 : 0;
  }
  return {kept == 1000, fmt("%zu/1000 queries keep the nearest candidate first", kept)};
}

Outcome table_structure() {
  const MixtureSpec spec{10, 100, 8, 0.05, 61};
  const auto ds = generate_synthetic(spec);
  const ExactIndex index(ds);
  const double far = estimate_eps_max(ds, ds.size(), 0);
  std::mt19937_64 rng(62);

  std::size_t good_pairs = 0;
  std::string first_bad;
  for (int pair = 0; pair < 20; ++pair) {
    double e1 = far * log_uniform(rng, 1e-4, 1.0);
    double e2 = far * log_uniform(rng, 1e-4, 1.0);
    if (e1 > e2) std::swap(e1, e2);
    if (pair == 0) e1 = 0.0;
    bool ok = true;
    std::vector<CutoffTable> built;
    for (double eps : {e1, e2}) {
      auto t = build_cutoff_table(index, eps);
      const auto oracle = testing::oracle_cutoff_lists(ds, eps);
      const bool complete = lists_of(t) == oracle;
      std::uint64_t entries = 0;
      bool symmetric = true, no_self = true;
      for (Id n = 0; n < t.size(); ++n) {
        const auto l = t.list(n);
        entries += l.size();
        for (Id i : l) {
          if (i == n) no_self = false;
          const auto back = t.list(i);
          if (!std::binary_search(back.begin(), back.end(), n)) symmetric = false;
        }
      }
      const bool bits = memory_bits(t) == 64 * entries;
      ok = ok && complete && symmetric && no_self && bits;
      if (!ok && first_bad.empty()) {
        first_bad = fmt(" first failure: eps=%g complete=%d symmetric=%d no_self=%d bits=%d", eps,
                        int(complete), int(symmetric), int(no_self), int(bits));
      }
      built.push_back(std::move(t));
    }
    for (Id n = 0; n < ds.size() && ok; ++n) {
      const auto a = built[0].list(n);
      const auto b = built[1].list(n);
      ok = std::includes(b.begin(), b.end(), a.begin(), a.end());
    }
    good_pairs += ok ? 1 : 0;
  }
  return {good_pairs == 20,
          fmt("N=1000: %zu/20 eps pairs pass symmetry, self-exclusion, completeness, 64*sum bits, "
              "monotonicity",
              good_pairs) +
              first_bad};
}

Outcome trainer_quality() {
  const auto& b = bench16();
  const auto t0 = Clock::now();
  TrainConfig cfg;
  cfg.eps_max = b.eps_max;
  cfg.lambda = 0.3;
  cfg.s_candidates = 150;
  cfg.k_results = 30;
  const EpsilonObjective objective(b.train, b.index, cfg.lambda, cfg.s_candidates, cfg.k_results);
  const auto trained = train_epsilon([&](double e) { return objective(e); }, cfg);
  const double train_secs = seconds_since(t0);

  double grid_min = std::numeric_limits<double>::infinity();
  double grid_arg = 0.0;
  for (int j = 0; j < 1000; ++j) {
    const double eps = b.eps_max * j / 999.0;
    const double f = objective(eps).mean_f;
    if (f < grid_min) {
      grid_min = f;
      grid_arg = eps;
    }
  }
  // The cached objective must agree with the literal definition.
  const auto literal = expected_f(trained.eps_star, b.train, b.index, cfg);
  const bool literal_ok = literal.mean_f == trained.f_star;

  const double gap = (trained.f_star - grid_min) / std::abs(grid_min);
  return {gap <= 0.01 && train_secs < 600.0 && literal_ok,
          fmt("eps*=%.6g f*=%.6g grid min f=%.6g at eps=%.6g, relative gap %.4f%% (<= 1%%), "
              "literal==cached %s, train %.1fs (< 600s)",
              trained.eps_star, trained.f_star, grid_min, grid_arg, 100.0 * gap,
              literal_ok ? "yes" : "no", train_secs)};
}

Outcome table_trends() {
  const auto& b = bench16();
  TrainConfig cfg;
  cfg.eps_max = b.eps_max;
  cfg.s_candidates = 150;
  cfg.k_results = 30;

  // (a), (b): compare methods at the trained eps for lambda = 0.3.
  cfg.lambda = 0.3;
  const auto t03 = train_epsilon(b.train, b.index, cfg);
  const auto table03 = build_cutoff_table(b.index, t03.eps_star);
  EvalConfig ec;
  ec.lambda = 0.3;
  ec.s_candidates = 150;
  ec.k_results = 30;
  ec.trials = 1;
  ec.methods = {Method::none, Method::clustering, Method::gmm, Method::lotus};
  const auto report = evaluate(b.test.head(300), b.index, &table03, ec);
  const auto& none = report.rows[0];
  const auto& clu = report.rows[1];
  const auto& gmm = report.rows[2];
  const auto& lotus = report.rows[3];
  const bool a = gmm.diversity_term < none.diversity_term && gmm.diversity_term < clu.diversity_term;
  const bool bb = lotus.f <= none.f;

  // (c): lambda 0.5 trains a larger eps and longer lists.
  cfg.lambda = 0.5;
  const auto t05 = train_epsilon(b.train, b.index, cfg);
  const double l03 = avg_list_length(table03);
  const double l05 = avg_list_length(build_cutoff_table(b.index, t05.eps_star));
  const bool c = t05.eps_star > t03.eps_star && l05 > l03;

  // (d): filter vs exact search at N = 1e5, D = 128, S = 500, K = 100.
  const MixtureSpec big{100, 1000, 128, 0.05, 99};
  const auto base = generate_synthetic(big);
  const auto queries = generate_synthetic_queries(big, 100, 100);
  const ExactIndex exact(base);
  const PivotIndex pivot(base);
  TrainConfig big_cfg;
  big_cfg.eps_max = estimate_eps_max(base, 1000, 0);
  big_cfg.lambda = 0.3;
  big_cfg.s_candidates = 500;
  big_cfg.k_results = 100;
  const auto tb = Clock::now();
  const auto big_trained = train_epsilon(base.head(100), exact, big_cfg);
  const double big_train_s = seconds_since(tb);
  const auto tt = Clock::now();
  const auto big_table = build_cutoff_table(pivot, big_trained.eps_star);
  const double big_build_s = seconds_since(tt);

  std::vector<std::vector<Id>> cand(queries.size());
  std::vector<double> search_ms;
  for (int rep = 0; rep < 3; ++rep) {
    const auto ts = Clock::now();
    for (std::size_t q = 0; q < queries.size(); ++q) cand[q] = ids_of(exact.knn(queries.row(q), 500));
    search_ms.push_back(1e3 * seconds_since(ts) / double(queries.size()));
  }
  const double search = median(search_ms);
  const double filter = time_filter_batch(cand, big_table, 100, true, 5) / double(queries.size());
  const bool d = filter < 0.1 * search;

  return {a && bb && c && d,
          fmt("(a) gmm div %.5f vs none %.5f, clustering %.5f: %s; ", gmm.diversity_term,
              none.diversity_term, clu.diversity_term, a ? "ok" : "FAIL") +
              fmt("(b) lotus f %.5f <= none f %.5f: %s; ", lotus.f, none.f, bb ? "ok" : "FAIL") +
              fmt("(c) lambda .3 -> .5: eps* %.5g -> %.5g, L %.3f -> %.3f: %s; ", t03.eps_star,
                  t05.eps_star, l03, l05, c ? "ok" : "FAIL") +
              fmt("(d) N=1e5 D=128: filter %.4f ms vs search %.3f ms (ratio %.4f < 0.1, eps*=%.4g "
                  "L=%.2f, train %.1fs, build %.1fs): %s",
                  filter, search, filter / search, big_trained.eps_star, avg_list_length(big_table),
                  big_train_s, big_build_s, d ? "ok" : "FAIL")};
}

Outcome scaling() {
  const MixtureSpec spec{100, 200, 8, 0.05, 123};
  const auto base8 = generate_synthetic(spec);
  const auto queries8 = generate_synthetic_queries(spec, 500, 124);
  const ExactIndex index8(base8);
  // eps at the median 20th-neighbor distance, so L is near 20 and the K*L
  // term carries real weight.
  std::vector<double> kth;
  for (std::size_t i = 0; i < base8.size(); i += 97) kth.push_back(index8.knn(base8.row(i), 21).back().distance);
  const double eps = median(kth);
  const auto table = build_cutoff_table(index8, eps);
  const std::size_t k = 10;

  // Doubling S at fixed K and table, timings interleaved across S.
  const std::vector<std::size_t> s_values{100, 200, 400, 800};
  std::vector<std::vector<std::vector<Id>>> cand(s_values.size());
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    for (std::size_t q = 0; q < queries8.size(); ++q) {
      cand[i].push_back(ids_of(index8.knn(queries8.row(q), s_values[i])));
    }
  }
  std::vector<std::vector<double>> times(s_values.size());
  for (int rep = 0; rep < 15; ++rep) {
    for (std::size_t i = 0; i < s_values.size(); ++i) {
      times[i].push_back(time_filter_batch(cand[i], table, k, true, 1));
    }
  }
  double worst_doubling = 0.0;
  std::string ratios;
  for (std::size_t i = 0; i + 1 < s_values.size(); ++i) {
    const double r = median(times[i + 1]) / median(times[i]);
    worst_doubling = std::max(worst_doubling, r);
    ratios += fmt("%zu->%zu x%.2f ", s_values[i], s_values[i + 1], r);
  }

  // Same vectors zero-padded to D = 512: identical distances and candidates.
  const std::size_t wide_dim = 512;
  std::vector<float> padded(base8.size() * wide_dim, 0.0F);
  for (std::size_t i = 0; i < base8.size(); ++i) {
    std::copy(base8.row(i).begin(), base8.row(i).end(), padded.begin() + std::ptrdiff_t(i * wide_dim));
  }
  const VectorDataset base512(base8.size(), wide_dim, std::move(padded));
  const ExactIndex index512(base512);
  std::vector<std::vector<Id>> cand8, cand512;
  bool same_candidates = true;
  for (std::size_t q = 0; q < queries8.size(); ++q) {
    std::vector<float> wide_q(wide_dim, 0.0F);
    std::copy(queries8.row(q).begin(), queries8.row(q).end(), wide_q.begin());
    cand8.push_back(ids_of(index8.knn(queries8.row(q), 200)));
    cand512.push_back(ids_of(index512.knn(wide_q, 200)));
    same_candidates = same_candidates && cand8.back() == cand512.back();
  }
  std::vector<double> t8, t512;
  for (int rep = 0; rep < 21; ++rep) {
    t8.push_back(time_filter_batch(cand8, table, k, true, 1));
    t512.push_back(time_filter_batch(cand512, table, k, true, 1));
  }
  const double d_ratio = median(t512) / median(t8);

  return {worst_doubling <= 2.5 && d_ratio <= 1.3 && same_candidates,
          fmt("eps=%.4g L=%.2f; doubling S: ", eps, avg_list_length(table)) + ratios +
              fmt("(max %.2f <= 2.5); D 512 vs 8 filter time ratio %.3f (<= 1.3), same candidates %s",
                  worst_doubling, d_ratio, same_candidates ? "yes" : "no")};
}

Outcome s_sweep_trend() {
  const auto& b = bench16();
  const std::size_t k = 30;
  const std::vector<std::size_t> s_values{k, 2 * k, 3 * k, 5 * k};
  std::map<std::size_t, CutoffTable> tables;
  for (std::size_t s : s_values) {
    TrainConfig cfg;
    cfg.eps_max = b.eps_max;
    cfg.lambda = 0.3;
    cfg.s_candidates = s;
    cfg.k_results = k;
    tables.emplace(s, build_cutoff_table(b.index, train_epsilon(b.train, b.index, cfg).eps_star));
  }
  BenchConfig bc;
  bc.s_values = s_values;
  bc.k_results = k;
  bc.lambda = 0.3;
  bc.safeguard = true;
  bc.repeats = 1;
  const auto report = bench_scaling(
      b.test, b.index, [&](std::size_t s) -> const CutoffTable& { return tables.at(s); }, bc);

  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const auto& p = report.points[i];
    detail += fmt("S=%zu f=%.5f+-%.5f (eps=%.4g) ", p.s, p.mean_f, p.f_stderr, p.epsilon);
    if (i > 0) {
      const auto& prev = report.points[i - 1];
      ok = ok && p.mean_f <= prev.mean_f + std::max(p.f_stderr, prev.f_stderr);
    }
  }
  return {ok, detail + (ok ? "non-increasing within one standard error" : "increase beyond one standard error")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"diversity_bound", diversity_bound},
      {"naive_filter_equivalence", naive_equivalence},
      {"ordered_set_differential", ordered_set_differential},
      {"exact_oracle_sanity", exact_oracle},
      {"top1_preservation", top1_preservation},
      {"cutoff_table_structure", table_structure},
      {"trainer_quality", trainer_quality},
      {"table_trends", table_trends},
      {"filter_scaling", scaling},
      {"s_sweep_trend", s_sweep_trend},
  };
  std::vector<std::string> only(argv + 1, argv + argc);

  int failures = 0;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failures += out.pass ? 0 : 1;
    std::printf("%s %s: %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", name.c_str(), out.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
