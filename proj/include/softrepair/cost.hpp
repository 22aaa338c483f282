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

// Violation sets and the soft-repair objective
//
//   cost(E | D) = sum_{f in D \ E} w_f + sum_{phi in Delta} w_phi |vio(E, phi)|
//
// plus the shifted objective w_D(E) = cost(E | D) - sum_{f in D} w_f that the
// flow reduction minimizes.

#ifndef SOFTREPAIR_COST_HPP_
#define SOFTREPAIR_COST_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "softrepair/model.hpp"
#include "softrepair/rational.hpp"

namespace softrepair {

struct ViolationSet {
  std::size_t fd_index = 0;
  /// Unordered pairs stored as (smaller id, larger id), sorted.
  std::vector<std::pair<FactId, FactId>> pairs;

  std::size_t size() const { return pairs.size(); }
};

struct CostBreakdown {
  Rational deletion_cost;
  /// w_phi * |vio(E, phi)|, indexed like the FD set.
  std::vector<Rational> violation_cost_per_fd;
  std::vector<std::size_t> violation_count_per_fd;
  Rational total;

  Rational violation_cost() const {
    Rational sum;
    for (const auto& c : violation_cost_per_fd) sum += c;
    return sum;
  }
};

/// A chosen subset E together with its cost.
struct RepairResult {
  FactSet kept;
  CostBreakdown cost;
  std::string solver;
  /// 1 for exact solvers, 3 for the approximation.
  int ratio_bound = 1;
  /// Certified lower bound on the optimum, when the solver produces one.
  std::optional<Rational> lower_bound;
};

/// vio(E, fd) for E given as ids of `db`.
inline ViolationSet violations(const Database& db, const FactSet& subset,
                               const FD& fd, std::size_t fd_index = 0) {
  ViolationSet out;
  out.fd_index = fd_index;
  if (fd.trivial()) return out;
  // Group by lhs projection; only facts in the same group can conflict.
  const auto lhs = fd.lhs.members();
  std::map<std::vector<std::string>, std::vector<FactId>> groups;
  for (FactId id : subset) groups[project(db.fact(id), lhs)].push_back(id);
  for (const auto& [key, ids] : groups) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        if (is_violation(db.fact(ids[i]), db.fact(ids[j]), fd)) {
          out.pairs.emplace_back(std::min(ids[i], ids[j]),
                                 std::max(ids[i], ids[j]));
        }
      }
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

/// cost(E | D) under `delta`, with per-FD attribution.
inline CostBreakdown cost(const Database& db, const FactSet& subset,
                          const FDSet& delta) {
  CostBreakdown out;
  std::vector<bool> kept(db.size(), false);
  for (FactId id : subset) kept.at(id) = true;
  for (const auto& f : db.facts()) {
    if (!kept[f.id]) out.deletion_cost += f.weight;
  }
  out.total = out.deletion_cost;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const std::size_t count = violations(db, subset, delta[i], i).size();
    Rational c = delta[i].weight * Rational(static_cast<std::int64_t>(count));
    out.total += c;
    out.violation_count_per_fd.push_back(count);
    out.violation_cost_per_fd.push_back(std::move(c));
  }
  return out;
}

/// w_D(E) = -sum_{f in E} w_f + sum_phi w_phi |vio(E, phi)|.
inline Rational shifted_cost(const Database& db, const FactSet& subset,
                             const FDSet& delta) {
  Rational out;
  for (FactId id : subset) out -= db.fact(id).weight;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    out += delta[i].weight *
           Rational(static_cast<std::int64_t>(
               violations(db, subset, delta[i], i).size()));
  }
  return out;
}

/// Wraps a kept set into a RepairResult with its recomputed cost.
inline RepairResult make_result(const Database& db, const FDSet& delta,
                                FactSet kept, std::string solver,
                                int ratio_bound = 1) {
  RepairResult r;
  r.kept = normalize(std::move(kept));
  r.cost = cost(db, r.kept, delta);
  r.solver = std::move(solver);
  r.ratio_bound = ratio_bound;
  return r;
}

}  // namespace softrepair

#endif  // SOFTREPAIR_COST_HPP_
