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

// softrepair: repair | classify | bench.
//
// Exit codes: 0 success, 1 input error, 2 routing error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "softrepair.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitRouting = 2;

std::vector<std::string> split_schema(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text + ",") {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!current.empty()) out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  return out;
}

int run_repair_command(const std::string& table, const std::string& fds,
                       const std::string& solver, const std::string& report) {
  const softrepair::Database db = softrepair::load_database(table);
  const softrepair::FDSet delta = softrepair::load_fd_spec(fds, db.schema());
  const auto choice = softrepair::parse_solver_choice(solver);
  const softrepair::RepairReport r = softrepair::run_repair(db, delta, choice);
  const nlohmann::json doc = softrepair::report_json(r, db, delta);
  std::cout << doc.dump(2) << '\n';
  if (!report.empty()) {
    std::ofstream out(report);
    if (!out) throw softrepair::IngestionError(0, "cannot write " + report);
    out << doc.dump(2) << '\n';
  }
  std::cerr << "route " << softrepair::to_string(r.route.kind) << " ("
            << softrepair::to_string(r.route.hardness) << "), solver "
            << r.result.solver << ", cost " << r.result.cost.total
            << ", kept " << r.result.kept.size() << "/" << db.size()
            << " facts, " << r.wall_time_ms << " ms\n";
  return kExitOk;
}

int run_classify_command(const std::string& fds, const std::string& schema) {
  const softrepair::Schema s("R", split_schema(schema));
  const softrepair::FDSet delta = softrepair::load_fd_spec(fds, s);
  const softrepair::SolverRoute route = softrepair::classify(delta, s);
  std::cout << softrepair::route_json(route, s).dump(2) << '\n';
  std::cerr << softrepair::to_string(route.kind) << ' '
            << softrepair::to_string(route.hardness) << '\n';
  return kExitOk;
}

int run_bench_command(const std::string& config_path) {
  const softrepair::BenchConfig config =
      softrepair::load_bench_config(config_path);
  const auto rows = softrepair::run_benchmark(config);
  softrepair::write_bench_csv(std::cout, rows);
  std::cerr << rows.size() << " rows, seed " << config.seed << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-cost soft repairs under weighted functional dependencies"};
  app.require_subcommand(1);

  std::string table, fds, solver = "auto", report;
  auto* repair = app.add_subcommand("repair", "Compute an optimal (or 3-approximate) repair");
  repair->add_option("table", table, "CSV table; optional __weight column")
      ->required();
  repair->add_option("--fds", fds, "FD file, one 'LHS -> RHS @ WEIGHT' per line")
      ->required();
  repair->add_option("--solver", solver, "auto, dp, flow, approx or oracle")
      ->check(CLI::IsMember({"auto", "dp", "flow", "approx", "oracle"}));
  repair->add_option("--report", report, "Also write the JSON report here");

  std::string classify_fds, schema;
  auto* classify = app.add_subcommand("classify", "Route an FD set");
  classify->add_option("fds", classify_fds, "FD file")->required();
  classify->add_option("--schema", schema, "Attribute names, comma-separated")
      ->required();

  std::string config;
  auto* bench = app.add_subcommand("bench", "Run a random-instance benchmark");
  bench->add_option("config", config, "JSON benchmark config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*repair) return run_repair_command(table, fds, solver, report);
    if (*classify) return run_classify_command(classify_fds, schema);
    if (*bench) return run_bench_command(config);
  } catch (const softrepair::RoutingError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRouting;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
