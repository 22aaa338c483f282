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

// Classify, dispatch to a solver, and report.

#ifndef SOFTREPAIR_SOLVE_HPP_
#define SOFTREPAIR_SOLVE_HPP_

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "softrepair/approx_solver.hpp"
#include "softrepair/classifier.hpp"
#include "softrepair/cost.hpp"
#include "softrepair/dp_solver.hpp"
#include "softrepair/flow_solver.hpp"
#include "softrepair/model.hpp"
#include "softrepair/oracle.hpp"

namespace softrepair {

enum class SolverChoice { kAuto, kDp, kFlow, kApprox, kOracle };

/// Raised when a solver override does not apply to the FD set.
class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline SolverChoice parse_solver_choice(std::string_view name) {
  if (name == "auto") return SolverChoice::kAuto;
  if (name == "dp") return SolverChoice::kDp;
  if (name == "flow") return SolverChoice::kFlow;
  if (name == "approx") return SolverChoice::kApprox;
  if (name == "oracle") return SolverChoice::kOracle;
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

inline std::string to_string(SolverChoice c) {
  switch (c) {
    case SolverChoice::kAuto: return "auto";
    case SolverChoice::kDp: return "dp";
    case SolverChoice::kFlow: return "flow";
    case SolverChoice::kApprox: return "approx";
    case SolverChoice::kOracle: return "oracle";
  }
  return "?";
}

struct RepairReport {
  SolverRoute route;
  RepairResult result;
  FactSet deleted;
  double wall_time_ms = 0;
};

namespace detail {

inline RepairResult run_dp(const Database& db, const FDSet& delta,
                           const EliminationTrace& trace) {
  const FDSet nontrivial = remove_trivial(delta);
  if (nontrivial.size() == 1) {
    RepairResult r = solve_single_fd(db, nontrivial[0]);
    // Trivial FDs and merged duplicates never add cost; report against the
    // FD set as given.
    return make_result(db, delta, std::move(r.kept), r.solver);
  }
  return solve_lc(db, delta, trace);
}

inline RepairResult run_oracle(const Database& db, const FDSet& delta) {
  OracleResult o;
  try {
    o = brute_force_optimal(db, delta);
  } catch (const std::length_error& e) {
    throw RoutingError(std::string("oracle solver not applicable: ") +
                       e.what());
  }
  return make_result(db, delta, o.all_optima.back(), "oracle");
}

}  // namespace detail

/// Solves with the routed solver, or with `choice` when it applies.
/// Throws RoutingError when an exact solver is forced onto an FD set it
/// does not cover.
inline RepairReport run_repair(const Database& db, const FDSet& delta,
                               SolverChoice choice = SolverChoice::kAuto,
                               const FlowOptions& options = {}) {
  delta.validate(db.schema());
  const auto start = std::chrono::steady_clock::now();
  RepairReport report;
  report.route = classify(delta, db.schema());
  const RouteKind kind = report.route.kind;
  switch (choice) {
    case SolverChoice::kAuto:
      if (kind == RouteKind::kLcSequence) {
        report.result = detail::run_dp(db, delta, *report.route.trace);
      } else if (kind == RouteKind::kMatching) {
        report.result = solve_matching(db, delta, options);
      } else {
        report.result = approx_solve(db, delta);
      }
      break;
    case SolverChoice::kDp:
      if (kind != RouteKind::kLcSequence) {
        throw RoutingError(
            "dp solver not applicable: FD set is not L/C-emptiable");
      }
      report.result = detail::run_dp(db, delta, *report.route.trace);
      break;
    case SolverChoice::kFlow:
      if (!is_matching_constraint(delta, db.schema())) {
        throw RoutingError(
            "flow solver not applicable: FD set is not a matching constraint");
      }
      report.result = solve_matching(db, delta, options);
      break;
    case SolverChoice::kApprox:
      report.result = approx_solve(db, delta);
      break;
    case SolverChoice::kOracle:
      report.result = detail::run_oracle(db, delta);
      break;
  }
  report.deleted = complement(db, report.result.kept);
  report.wall_time_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

inline nlohmann::json fact_json(const Fact& f) {
  return {{"id", f.id}, {"values", f.values}, {"weight", f.weight.to_string()}};
}

inline nlohmann::json route_json(const SolverRoute& route,
                                 const Schema& schema) {
  nlohmann::json out = {{"kind", to_string(route.kind)},
                        {"hardness", to_string(route.hardness)}};
  if (route.trace) {
    std::vector<std::string> order;
    for (AttrIndex a : route.trace->order()) order.push_back(schema.name(a));
    out["elimination_order"] = order;
  }
  return out;
}

/// Structured report. Rationals are exact strings ("5", "7/2").
inline nlohmann::json report_json(const RepairReport& report,
                                  const Database& db, const FDSet& delta) {
  const auto& r = report.result;
  nlohmann::json violations = nlohmann::json::array();
  for (std::size_t i = 0; i < delta.size(); ++i) {
    violations.push_back({{"fd", to_string(delta[i], db.schema())},
                          {"count", r.cost.violation_count_per_fd[i]},
                          {"cost", r.cost.violation_cost_per_fd[i].to_string()}});
  }
  nlohmann::json kept = nlohmann::json::array();
  for (FactId id : r.kept) kept.push_back(fact_json(db.fact(id)));
  nlohmann::json deleted = nlohmann::json::array();
  for (FactId id : report.deleted) deleted.push_back(fact_json(db.fact(id)));
  nlohmann::json out = {
      {"relation", db.schema().relation_name()},
      {"attributes", db.schema().attributes()},
      {"route", route_json(report.route, db.schema())},
      {"solver", r.solver},
      {"ratio_bound", r.ratio_bound},
      {"cost",
       {{"total", r.cost.total.to_string()},
        {"deletion", r.cost.deletion_cost.to_string()},
        {"violation", r.cost.violation_cost().to_string()},
        {"per_fd", violations}}},
      {"kept", kept},
      {"deleted", deleted},
      {"wall_time_ms", report.wall_time_ms},
  };
  if (r.lower_bound) out["lower_bound"] = r.lower_bound->to_string();
  return out;
}

}  // namespace softrepair

#endif  // SOFTREPAIR_SOLVE_HPP_
