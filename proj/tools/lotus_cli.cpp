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

// lotus: generate data, build cutoff tables, train eps, evaluate and benchmark.
//
// Exit codes: 0 success, 2 usage error, 1 runtime error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lotus/cutoff_table.hpp"
#include "lotus/dataset.hpp"
#include "lotus/evaluation.hpp"
#include "lotus/filter.hpp"
#include "lotus/neighbor_index.hpp"
#include "lotus/trainer.hpp"

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// 64-bit FNV-1a of a file's bytes, hex encoded.
std::string fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + " for hashing");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[static_cast<std::size_t>(i)]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

// Everything needed to rerun a command: its flags and the hashes of every
// file it read or wrote.
struct Manifest {
  std::string command;
  ordered_json flags = ordered_json::object();
  ordered_json inputs = ordered_json::object();
  ordered_json outputs = ordered_json::object();

  void input(const std::string& role, const std::string& path) {
    inputs[role] = {{"path", path}, {"fnv1a64", fnv1a_file(path)}};
  }
  void output(const std::string& role, const std::string& path) {
    outputs[role] = {{"path", path}, {"fnv1a64", fnv1a_file(path)}};
  }
  ordered_json to_json() const {
    return {{"command", command}, {"flags", flags}, {"inputs", inputs}, {"outputs", outputs}};
  }
};

// Gathers every option the user could have set on a subcommand.
ordered_json collect_flags(const CLI::App& app) {
  ordered_json out = ordered_json::object();
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    const auto& results = opt->results();
    std::string name = opt->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    if (results.empty()) {
      out[name] = opt->get_default_str();
    } else if (results.size() == 1) {
      out[name] = results.front();
    } else {
      out[name] = results;
    }
  }
  return out;
}

void write_json(const std::string& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

lotus::IndexKind parse_index(const std::string& name) {
  if (name == "exact") return lotus::IndexKind::exact;
  if (name == "pivot") return lotus::IndexKind::pivot;
  throw UsageError("--index must be exact or pivot");
}

// ---------------------------------------------------------------------------

struct Options {
  // common
  std::string base, queries, table, out;
  double lambda = 0.3;
  std::size_t s = 100;
  std::size_t k = 10;
  std::optional<double> eps;
  std::uint64_t seed = 0;
  bool safeguard = true;
  std::string index = "exact";
  unsigned threads = 1;

  // gen
  std::size_t n_clusters = 16;
  std::size_t per_cluster = 625;
  std::size_t dim = 16;
  double spread = 0.05;
  std::size_t n_queries = 1000;
  std::uint64_t query_seed = 1;

  // train
  bool train = false;
  std::size_t train_queries = 1000;
  std::optional<double> eps_max;
  std::size_t eps_max_samples = 1000;
  std::vector<std::size_t> widths{10, 10, 10, 10, 100};
  std::string trace;

  // eval / bench
  std::vector<std::string> methods{"none", "clustering", "gmm", "lotus"};
  std::size_t trials = 3;
  std::vector<std::size_t> s_list{100, 200, 400};
  bool train_per_s = false;
  std::size_t repeats = 5;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--lambda", o.lambda, "Diversity weight in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--s", o.s, "Candidates retrieved per query")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--k", o.k, "Results kept per query")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  cmd->add_option("--safeguard", o.safeguard, "Refill to K when pruning would leave too few (true/false)")
      ->capture_default_str();
  cmd->add_option("--index", o.index, "Neighbor index: exact or pivot")
      ->check(CLI::IsMember({"exact", "pivot"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out, "JSON report path");
}

void add_train_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--train-queries", o.train_queries, "Training queries: the first M base vectors")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--eps-max", o.eps_max, "Upper end of the eps search (default: sampled max distance)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--eps-max-samples", o.eps_max_samples, "Vectors sampled to estimate eps-max")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  cmd->add_option("--widths", o.widths, "Grid intervals per bracketing round")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

lotus::TrainConfig train_config(const Options& o, const lotus::VectorDataset& base, std::size_t s) {
  lotus::TrainConfig cfg;
  cfg.eps_max = o.eps_max ? *o.eps_max : lotus::estimate_eps_max(base, o.eps_max_samples, o.seed);
  if (!(cfg.eps_max > 0.0)) throw std::runtime_error("all sampled vectors coincide; pass --eps-max");
  cfg.widths = o.widths;
  cfg.lambda = o.lambda;
  cfg.s_candidates = s;
  cfg.k_results = o.k;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

// ---------------------------------------------------------------------------

int cmd_gen(const Options& o, const CLI::App& app) {
  const lotus::MixtureSpec spec{o.n_clusters, o.per_cluster, o.dim, o.spread, o.seed};
  if (o.base.empty()) throw UsageError("gen needs --base");
  const auto base = lotus::generate_synthetic(spec);
  lotus::save_binary(base, o.base);

  Manifest m{"gen", collect_flags(app)};
  m.output("base", o.base);
  if (!o.queries.empty()) {
    const auto queries = lotus::generate_synthetic_queries(spec, o.n_queries, o.query_seed);
    lotus::save_binary(queries, o.queries);
    m.output("queries", o.queries);
  }
  const std::string manifest_path = o.out.empty() ? o.base + ".manifest.json" : o.out;
  write_json(manifest_path, m.to_json());
  std::printf("wrote %zu x %zu base vectors to %s\n", base.size(), base.dim(), o.base.c_str());
  if (!o.queries.empty()) std::printf("wrote %zu queries to %s\n", o.n_queries, o.queries.c_str());
  std::printf("manifest: %s\n", manifest_path.c_str());
  return 0;
}

int cmd_build(const Options& o, const CLI::App& app) {
  if (o.eps.has_value() == o.train) throw UsageError("build needs exactly one of --eps or --train");
  const auto base = lotus::load_binary(o.base);
  const auto index = lotus::make_index(parse_index(o.index), base);

  Manifest m{"build", collect_flags(app)};
  m.input("base", o.base);
  ordered_json report{{"kind", "build"}};

  const auto t0 = Clock::now();
  double eps = o.eps.value_or(0.0);
  if (o.train) {
    const auto cfg = train_config(o, base, o.s);
    const auto trained = lotus::train_epsilon(base.head(o.train_queries), *index, cfg);
    eps = trained.eps_star;
    report["eps_max"] = cfg.eps_max;
    report["f_star"] = trained.f_star;
  }
  if (!(eps >= 0.0)) throw UsageError("--eps must be >= 0");
  const auto table = lotus::build_cutoff_table(*index, eps, o.threads);
  const double build_ms = ms_since(t0);
  lotus::serialize(table, o.table);
  m.output("table", o.table);

  report["n_vectors"] = table.size();
  report["epsilon"] = eps;
  report["avg_list_length"] = lotus::avg_list_length(table);
  report["memory_bits"] = lotus::memory_bits(table);
  report["build_ms"] = build_ms;
  std::printf("N=%zu eps=%.9g L=%.4f memory_bits=%llu build_ms=%.3f\n", table.size(), eps,
              lotus::avg_list_length(table),
              static_cast<unsigned long long>(lotus::memory_bits(table)), build_ms);
  if (!o.out.empty()) {
    report["manifest"] = m.to_json();
    write_json(o.out, report);
  }
  return 0;
}

int cmd_train(const Options& o, const CLI::App& app) {
  const auto base = lotus::load_binary(o.base);
  const auto index = lotus::make_index(parse_index(o.index), base);
  const auto cfg = train_config(o, base, o.s);

  Manifest m{"train", collect_flags(app)};
  m.input("base", o.base);

  const auto t0 = Clock::now();
  const auto result = lotus::train_epsilon(base.head(o.train_queries), *index, cfg);
  const double train_ms = ms_since(t0);
  std::printf("eps*=%.9g f*=%.9g eps_max=%.9g train_ms=%.1f\n", result.eps_star, result.f_star,
              cfg.eps_max, train_ms);

  if (!o.trace.empty()) {
    std::ofstream csv(o.trace, std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot write " + o.trace);
    csv << "round,eps,mean_f,skipped\n";
    csv.precision(17);
    for (const auto& p : result.trace) {
      csv << p.round << ',' << p.eps << ',' << p.mean_f << ',' << p.skipped << '\n';
    }
    csv.close();
    m.output("trace", o.trace);
  }
  if (!o.out.empty()) {
    ordered_json j{{"kind", "train"},      {"eps_star", result.eps_star},
                   {"f_star", result.f_star}, {"eps_max", cfg.eps_max},
                   {"train_ms", train_ms},  {"grid_points", result.trace.size()},
                   {"manifest", m.to_json()}};
    write_json(o.out, j);
  }
  return 0;
}

int cmd_eval(const Options& o, const CLI::App& app) {
  lotus::EvalConfig cfg;
  cfg.lambda = o.lambda;
  cfg.s_candidates = o.s;
  cfg.k_results = o.k;
  cfg.safeguard = o.safeguard;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.methods.clear();
  for (const auto& name : o.methods) {
    try {
      cfg.methods.push_back(lotus::parse_method(name));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  try {
    lotus::FilterParams{cfg.s_candidates, cfg.k_results, cfg.safeguard}.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto base = lotus::load_binary(o.base);
  const auto queries = lotus::load_binary(o.queries);
  const auto index = lotus::make_index(parse_index(o.index), base);
  Manifest m{"eval", collect_flags(app)};
  m.input("base", o.base);
  m.input("queries", o.queries);

  std::optional<lotus::CutoffTable> table;
  if (!o.table.empty()) {
    table = lotus::deserialize(o.table);
    m.input("table", o.table);
  }
  const auto report = lotus::evaluate(queries, *index, table ? &*table : nullptr, cfg);
  std::fputs(lotus::format_table(report).c_str(), stdout);
  if (!o.out.empty()) {
    auto j = ordered_json::parse(lotus::to_json(report));
    j["manifest"] = m.to_json();
    write_json(o.out, j);
  }
  return 0;
}

int cmd_bench(const Options& o, const CLI::App& app) {
  if (o.table.empty() == !o.train_per_s) {
    throw UsageError("bench needs exactly one of --table or --train-per-s");
  }
  lotus::BenchConfig cfg;
  cfg.s_values = o.s_list;
  cfg.k_results = o.k;
  cfg.lambda = o.lambda;
  cfg.safeguard = o.safeguard;
  cfg.repeats = o.repeats;
  for (std::size_t s : cfg.s_values) {
    if (s < o.k) throw UsageError("every --s-list value must be >= --k");
  }

  const auto base = lotus::load_binary(o.base);
  const auto queries = lotus::load_binary(o.queries);
  const auto index = lotus::make_index(parse_index(o.index), base);
  Manifest m{"bench", collect_flags(app)};
  m.input("base", o.base);
  m.input("queries", o.queries);

  std::map<std::size_t, lotus::CutoffTable> tables;
  std::optional<lotus::CutoffTable> fixed;
  if (!o.table.empty()) {
    fixed = lotus::deserialize(o.table);
    m.input("table", o.table);
  } else {
    const auto train = base.head(o.train_queries);
    for (std::size_t s : cfg.s_values) {
      const auto tc = train_config(o, base, s);
      const auto eps = lotus::train_epsilon(train, *index, tc).eps_star;
      tables.emplace(s, lotus::build_cutoff_table(*index, eps, o.threads));
    }
  }
  const auto report = lotus::bench_scaling(
      queries, *index,
      [&](std::size_t s) -> const lotus::CutoffTable& { return fixed ? *fixed : tables.at(s); }, cfg);
  std::fputs(lotus::format_table(report).c_str(), stdout);
  if (!o.out.empty()) {
    auto j = ordered_json::parse(lotus::to_json(report));
    j["manifest"] = m.to_json();
    write_json(o.out, j);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LotusFilter: diversify nearest-neighbor results with a cutoff table"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Generate a synthetic clustered dataset and queries");
  gen->add_option("--base", o.base, "Output base vectors (.lvec)")->required();
  gen->add_option("--queries", o.queries, "Output query vectors (.lvec)");
  gen->add_option("--clusters", o.n_clusters, "Number of clusters")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--per-cluster", o.per_cluster, "Vectors per cluster")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--dim", o.dim, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--spread", o.spread, "Per-coordinate noise sigma")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--n-queries", o.n_queries, "Number of queries")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--query-seed", o.query_seed, "Seed for query noise")->capture_default_str();
  gen->add_option("--seed", o.seed, "Seed for centers and base noise")->capture_default_str();
  gen->add_option("--out", o.out, "Manifest path (default: <base>.manifest.json)");

  auto* build = app.add_subcommand("build", "Build a cutoff table");
  build->add_option("--base", o.base, "Base vectors (.lvec)")->required();
  build->add_option("--table", o.table, "Output table (.lotf)")->required();
  build->add_option("--eps", o.eps, "Squared-distance cutoff");
  build->add_flag("--train", o.train, "Train eps first");
  build->add_option("--threads", o.threads, "Worker threads for the build")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(build, o);
  add_train_flags(build, o);

  auto* train = app.add_subcommand("train", "Train eps by bracketing search");
  train->add_option("--base", o.base, "Base vectors (.lvec)")->required();
  train->add_option("--trace", o.trace, "CSV of every evaluated grid point");
  add_common(train, o);
  add_train_flags(train, o);

  auto* eval = app.add_subcommand("eval", "Compare diversification methods on a query batch");
  eval->add_option("--base", o.base, "Base vectors (.lvec)")->required();
  eval->add_option("--queries", o.queries, "Query vectors (.lvec)")->required();
  eval->add_option("--table", o.table, "Cutoff table (.lotf), needed for the lotus method");
  eval->add_option("--methods", o.methods, "Any of none, clustering, gmm, lotus, brute")
      ->delimiter(',')
      ->capture_default_str();
  eval->add_option("--trials", o.trials, "Timed passes per query")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(eval, o);

  auto* bench = app.add_subcommand("bench", "Filter time and cost as S varies");
  bench->add_option("--base", o.base, "Base vectors (.lvec)")->required();
  bench->add_option("--queries", o.queries, "Query vectors (.lvec)")->required();
  bench->add_option("--table", o.table, "Cutoff table (.lotf) used for every S");
  bench->add_flag("--train-per-s", o.train_per_s, "Train eps and build a table for each S");
  bench->add_option("--s-list", o.s_list, "S values to sweep")->delimiter(',')->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--repeats", o.repeats, "Timed batch repetitions")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--threads", o.threads, "Worker threads for table builds")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(bench, o);
  add_train_flags(bench, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*gen) return cmd_gen(o, *gen);
    if (*build) return cmd_build(o, *build);
    if (*train) return cmd_train(o, *train);
    if (*eval) return cmd_eval(o, *eval);
    if (*bench) return cmd_bench(o, *bench);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}
