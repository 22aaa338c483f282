// Copyright 2026 The softrepair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random instances and the benchmark harness.
//
// Config (JSON):
//
//   {
//     "seed": 7,              // overridden by $SOFTREPAIR_SEED
//     "threads": 4,
//     "instances": [{
//       "name": "two_key",
//       "attributes": ["A", "B"],
//       "fds": ["A -> B @ 1", "B -> A @ 1"],
//       "sizes": [6],
//       "seeds": 50,
//       "values_per_column": 3,
//       "fact_weight": {"min": "0", "max": "4", "denominator": 4},
//       "fd_weight": {"min": "0", "max": "4", "denominator": 4},
//       "solvers": ["flow", "approx"],
//       "oracle_limit": 12
//     }]
//   }
//
// "fd_weight" is optional; without it the weights written in "fds" are
// kept. Every (template, size, seed) triple derives its own generator from
// the config seed, so rows do not depend on the thread count.

#ifndef SOFTREPAIR_BENCH_HPP_
#define SOFTREPAIR_BENCH_HPP_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "softrepair/io.hpp"
#include "softrepair/model.hpp"
#include "softrepair/oracle.hpp"
#include "softrepair/rational.hpp"
#include "softrepair/solve.hpp"

namespace softrepair {

class BenchConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rationals min + i / denominator, drawn uniformly over the grid.
struct WeightRange {
  Rational min = 0;
  Rational max = 4;
  std::int64_t denominator = 4;
};

inline Rational random_weight(const WeightRange& range, std::mt19937_64& rng) {
  const Rational span = (range.max - range.min) * Rational(range.denominator);
  if (span.denominator() != 1 || span.is_negative()) {
    throw std::invalid_argument("weight range is not on the denominator grid");
  }
  std::uniform_int_distribution<std::int64_t> pick(
      0, span.numerator().convert_to<std::int64_t>());
  return range.min + Rational(BigInt(pick(rng)), BigInt(range.denominator));
}

/// n distinct facts with values "v0".."v{k-1}" per column.
inline Database random_database(const Schema& schema, std::size_t n,
                                std::size_t values_per_column,
                                const WeightRange& weights,
                                std::mt19937_64& rng) {
  if (values_per_column == 0) {
    throw std::invalid_argument("values_per_column must be positive");
  }
  double capacity = 1;
  for (std::size_t i = 0; i < schema.arity(); ++i) {
    capacity *= static_cast<double>(values_per_column);
  }
  if (static_cast<double>(n) > capacity) {
    throw std::invalid_argument("cannot draw " + std::to_string(n) +
                                " distinct tuples");
  }
  std::uniform_int_distribution<std::size_t> value(0, values_per_column - 1);
  std::set<std::vector<std::string>> seen;
  Database db(schema);
  while (db.size() < n) {
    std::vector<std::string> tuple;
    for (std::size_t i = 0; i < schema.arity(); ++i) {
      tuple.push_back("v" + std::to_string(value(rng)));
    }
    if (!seen.insert(tuple).second) continue;
    db.add(std::move(tuple), random_weight(weights, rng));
  }
  return db;
}

struct BenchTemplate {
  std::string name;
  Schema schema{"R", {"A"}};
  FDSet fds;
  std::vector<std::size_t> sizes;
  std::size_t seeds = 1;
  std::size_t values_per_column = 3;
  WeightRange fact_weight;
  std::optional<WeightRange> fd_weight;
  std::vector<SolverChoice> solvers;
  std::size_t oracle_limit = 12;
};

struct BenchConfig {
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::vector<BenchTemplate> templates;
};

struct BenchRow {
  std::string template_name;
  std::size_t n = 0;
  std::size_t seed_index = 0;
  std::string solver;
  Rational cost;
  std::optional<Rational> oracle_cost;
  double time_ms = 0;

  /// cost / oracle_cost; 1 when both are zero, nullopt without an oracle
  /// or when only the oracle cost is zero.
  std::optional<double> ratio() const {
    if (!oracle_cost) return std::nullopt;
    if (oracle_cost->is_zero()) {
      return cost.is_zero() ? std::optional<double>(1.0) : std::nullopt;
    }
    return (cost / *oracle_cost).to_double();
  }
};

namespace detail {

inline WeightRange parse_weight_range(const nlohmann::json& j) {
  WeightRange r;
  const auto rational = [](const nlohmann::json& v) {
    return v.is_string() ? Rational::parse(v.get<std::string>())
                         : Rational::parse(v.dump());
  };
  if (j.contains("min")) r.min = rational(j.at("min"));
  if (j.contains("max")) r.max = rational(j.at("max"));
  r.denominator = j.value("denominator", std::int64_t{4});
  if (r.denominator <= 0 || r.max < r.min || r.min.is_negative()) {
    throw BenchConfigError("bad weight range " + j.dump());
  }
  return r;
}

}  // namespace detail

/// Parses a config document; `seed_override` replaces its seed.
inline BenchConfig parse_bench_config(
    const nlohmann::json& j,
    std::optional<std::uint64_t> seed_override = std::nullopt) {
  BenchConfig config;
  try {
    config.seed = j.value("seed", std::uint64_t{0});
    config.threads = j.value("threads", std::size_t{1});
    if (config.threads == 0) config.threads = 1;
    for (const auto& t : j.value("instances", nlohmann::json::array())) {
      BenchTemplate bt;
      bt.name = t.value("name", "instance" + std::to_string(config.templates.size()));
      bt.schema = Schema(bt.name, t.at("attributes").get<std::vector<std::string>>());
      std::string fd_text;
      for (const auto& line : t.at("fds")) fd_text += line.get<std::string>() + "\n";
      bt.fds = parse_fd_spec(fd_text, bt.schema);
      bt.sizes = t.at("sizes").get<std::vector<std::size_t>>();
      bt.seeds = t.value("seeds", std::size_t{1});
      bt.values_per_column = t.value("values_per_column", std::size_t{3});
      if (t.contains("fact_weight")) {
        bt.fact_weight = detail::parse_weight_range(t.at("fact_weight"));
      }
      if (t.contains("fd_weight")) {
        bt.fd_weight = detail::parse_weight_range(t.at("fd_weight"));
      }
      for (const auto& s : t.value("solvers", nlohmann::json::array({"auto"}))) {
        bt.solvers.push_back(parse_solver_choice(s.get<std::string>()));
      }
      bt.oracle_limit = t.value("oracle_limit", std::size_t{12});
      const SolverRoute route = classify(bt.fds, bt.schema);
      for (SolverChoice c : bt.solvers) {
        if ((c == SolverChoice::kDp && route.kind != RouteKind::kLcSequence) ||
            (c == SolverChoice::kFlow &&
             !is_matching_constraint(bt.fds, bt.schema))) {
          throw BenchConfigError("solver " + to_string(c) +
                                 " does not apply to template " + bt.name);
        }
      }
      config.templates.push_back(std::move(bt));
    }
  } catch (const BenchConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw BenchConfigError(std::string("bench config: ") + e.what());
  }
  if (seed_override) config.seed = *seed_override;
  return config;
}

/// Reads a config file, applying $SOFTREPAIR_SEED when set.
inline BenchConfig load_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw BenchConfigError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw BenchConfigError(std::string("bench config: ") + e.what());
  }
  std::optional<std::uint64_t> seed;
  if (const char* env = std::getenv("SOFTREPAIR_SEED")) {
    try {
      std::size_t used = 0;
      seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw BenchConfigError(std::string("SOFTREPAIR_SEED is not an integer: ") +
                             env);
    }
  }
  return parse_bench_config(j, seed);
}

namespace detail {

struct BenchTask {
  std::size_t template_index;
  std::size_t n;
  std::size_t seed_index;
};

inline std::vector<BenchRow> run_task(const BenchConfig& config,
                                      const BenchTask& task) {
  const BenchTemplate& t = config.templates[task.template_index];
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                    static_cast<std::uint32_t>(config.seed >> 32U),
                    static_cast<std::uint32_t>(task.template_index),
                    static_cast<std::uint32_t>(task.n),
                    static_cast<std::uint32_t>(task.seed_index)};
  std::mt19937_64 rng(seq);
  FDSet fds = t.fds;
  if (t.fd_weight) {
    std::vector<FD> reweighted;
    for (FD fd : t.fds) {
      fd.weight = random_weight(*t.fd_weight, rng);
      reweighted.push_back(std::move(fd));
    }
    fds = FDSet(std::move(reweighted));
  }
  const Database db =
      random_database(t.schema, task.n, t.values_per_column, t.fact_weight, rng);
  std::optional<Rational> oracle_cost;
  if (db.size() <= t.oracle_limit) {
    oracle_cost = brute_force_optimal(db, fds, t.oracle_limit).best_cost;
  }
  std::vector<BenchRow> rows;
  for (SolverChoice choice : t.solvers) {
    const RepairReport report = run_repair(db, fds, choice);
    BenchRow row{t.name,
                 task.n,
                 task.seed_index,
                 report.result.solver,
                 report.result.cost.total,
                 oracle_cost,
                 report.wall_time_ms};
    if (oracle_cost) {
      const Rational bound = Rational(report.result.ratio_bound) * *oracle_cost;
      if (row.cost < *oracle_cost || row.cost > bound) {
        throw std::logic_error("bench: " + row.solver + " cost " +
                               row.cost.to_string() + " outside [" +
                               oracle_cost->to_string() + ", " +
                               bound.to_string() + "] on " + t.name + " n=" +
                               std::to_string(task.n) + " seed=" +
                               std::to_string(task.seed_index));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// Runs every (template, size, seed) instance on a worker pool. Rows come
/// back in config order regardless of scheduling. Each row's cost is
/// checked against the oracle: exact solvers must match it and the
/// approximation must stay within its ratio bound.
inline std::vector<BenchRow> run_benchmark(const BenchConfig& config) {
  std::vector<detail::BenchTask> tasks;
  for (std::size_t ti = 0; ti < config.templates.size(); ++ti) {
    for (std::size_t n : config.templates[ti].sizes) {
      for (std::size_t s = 0; s < config.templates[ti].seeds; ++s) {
        tasks.push_back({ti, n, s});
      }
    }
  }
  std::vector<std::vector<BenchRow>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = detail::run_task(config, tasks[i]);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t threads = std::min(config.threads, tasks.size());
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<BenchRow> rows;
  for (auto& r : results) {
    for (auto& row : r) rows.push_back(std::move(row));
  }
  return rows;
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "template,n,seed,solver,cost,oracle_cost,ratio,time_ms\n";
  for (const auto& r : rows) {
    std::ostringstream ratio;
    if (const auto q = r.ratio()) ratio << std::fixed << std::setprecision(6) << *q;
    std::ostringstream time;
    time << std::fixed << std::setprecision(3) << r.time_ms;
    os << r.template_name << ',' << r.n << ',' << r.seed_index << ','
       << r.solver << ',' << r.cost << ','
       << (r.oracle_cost ? r.oracle_cost->to_string() : "") << ','
       << ratio.str() << ',' << time.str() << '\n';
  }
}

}  // namespace softrepair

#endif  // SOFTREPAIR_BENCH_HPP_
