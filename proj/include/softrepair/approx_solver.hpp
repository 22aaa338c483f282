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

// 3-approximation for any FD set through weighted set cover.
//
// Elements are the conflicts ({f, g}, delta). Each lies in exactly three
// sets: "delete f" (w_f), "delete g" (w_g) and "pay for this violation"
// (w_delta). A local-ratio pass over the elements yields a cover of weight
// at most 3 times the sum of the amounts it subtracted, and that sum is a
// lower bound on the optimum.

#ifndef SOFTREPAIR_APPROX_SOLVER_HPP_
#define SOFTREPAIR_APPROX_SOLVER_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <tuple>
#include <vector>

#include "softrepair/cost.hpp"
#include "softrepair/model.hpp"
#include "softrepair/rational.hpp"

namespace softrepair {

struct CoverElement {
  FactId first = 0;   // smaller fact id
  FactId second = 0;  // larger fact id
  std::size_t fd_index = 0;
};

/// Set ids: [0, n) are the deletion sets of facts 0..n-1, n + e is the
/// violation set of element e.
struct CoverInstance {
  std::size_t num_facts = 0;
  std::vector<CoverElement> elements;
  std::vector<Rational> set_weights;
  std::vector<std::vector<std::size_t>> set_members;  // elements per set

  std::size_t num_sets() const { return set_weights.size(); }
  std::size_t violation_set(std::size_t element) const {
    return num_facts + element;
  }
  std::array<std::size_t, 3> sets_of(std::size_t element) const {
    const auto& e = elements.at(element);
    return {e.first, e.second, violation_set(element)};
  }
};

/// Elements ordered by (smaller id, larger id, FD index).
inline CoverInstance build_cover_instance(const Database& db,
                                          const FDSet& delta) {
  CoverInstance inst;
  inst.num_facts = db.size();
  const FactSet all = db.all_ids();
  for (std::size_t i = 0; i < delta.size(); ++i) {
    for (const auto& [f, g] : violations(db, all, delta[i], i).pairs) {
      inst.elements.push_back(CoverElement{f, g, i});
    }
  }
  std::sort(inst.elements.begin(), inst.elements.end(),
            [](const CoverElement& a, const CoverElement& b) {
              return std::tie(a.first, a.second, a.fd_index) <
                     std::tie(b.first, b.second, b.fd_index);
            });
  for (const auto& f : db.facts()) inst.set_weights.push_back(f.weight);
  for (const auto& e : inst.elements) {
    inst.set_weights.push_back(delta[e.fd_index].weight);
  }
  inst.set_members.resize(inst.set_weights.size());
  for (std::size_t e = 0; e < inst.elements.size(); ++e) {
    for (std::size_t s : inst.sets_of(e)) inst.set_members[s].push_back(e);
  }
  return inst;
}

/// Number of sets of `inst` containing element `e`, counted from the set
/// membership lists.
inline std::size_t element_frequency(const CoverInstance& inst, std::size_t e) {
  std::size_t count = 0;
  for (const auto& members : inst.set_members) {
    count += static_cast<std::size_t>(
        std::count(members.begin(), members.end(), e));
  }
  return count;
}

/// Local-ratio cover followed by a minimality pass, translated back to a
/// subset: selected deletion sets are removed, every other conflict is paid
/// as a violation. The result carries ratio_bound = 3 and the local-ratio
/// lower bound.
inline RepairResult approx_solve(const Database& db, const FDSet& delta) {
  delta.validate(db.schema());
  const CoverInstance inst = build_cover_instance(db, delta);
  std::vector<Rational> residual = inst.set_weights;
  std::vector<bool> selected(inst.num_sets(), false);
  Rational lower_bound;

  const auto covered = [&](std::size_t e) {
    for (std::size_t s : inst.sets_of(e)) {
      if (selected[s]) return true;
    }
    return false;
  };

  for (std::size_t e = 0; e < inst.elements.size(); ++e) {
    if (covered(e)) continue;
    const auto sets = inst.sets_of(e);
    Rational amount = residual[sets[0]];
    for (std::size_t s : sets) amount = std::min(amount, residual[s]);
    lower_bound += amount;
    for (std::size_t s : sets) {
      residual[s] -= amount;
      if (residual[s].is_zero()) selected[s] = true;
    }
  }

  // Minimality: drop a selected set when every element it covers is still
  // covered by another selected set.
  const auto redundant = [&](std::size_t s) {
    for (std::size_t e : inst.set_members[s]) {
      bool other = false;
      for (std::size_t t : inst.sets_of(e)) {
        if (t != s && selected[t]) other = true;
      }
      if (!other) return false;
    }
    return true;
  };
  for (std::size_t e = 0; e < inst.elements.size(); ++e) {
    const std::size_t s = inst.violation_set(e);
    if (selected[s] && redundant(s)) selected[s] = false;
  }
  std::vector<FactId> deletion_order;
  for (FactId f = 0; f < inst.num_facts; ++f) {
    if (selected[f]) deletion_order.push_back(f);
  }
  std::stable_sort(deletion_order.begin(), deletion_order.end(),
                   [&](FactId a, FactId b) {
                     return inst.set_weights[a] > inst.set_weights[b];
                   });
  for (FactId f : deletion_order) {
    if (redundant(f)) selected[f] = false;
  }

  FactSet kept;
  for (FactId f = 0; f < inst.num_facts; ++f) {
    if (!selected[f]) kept.push_back(f);
  }
  RepairResult result =
      make_result(db, delta, std::move(kept), "approx_local_ratio", 3);
  if (result.cost.total > Rational(3) * lower_bound) {
    throw std::logic_error("approx_solve: cost exceeds 3 x lower bound");
  }
  result.lower_bound = lower_bound;
  return result;
}

}  // namespace softrepair

#endif  // SOFTREPAIR_APPROX_SOLVER_HPP_
