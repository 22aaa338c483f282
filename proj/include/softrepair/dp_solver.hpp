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

// Exact dynamic programs over blocks of facts.
//
// Both solvers build, for a group of blocks B_1..B_q, a table
//
//   C[j][k] = min_t  C[j-1][k-t] + t (k-t) w + inner_j(t)
//
// where inner_j(t) is the cheapest way to keep exactly t facts of block j
// and w is the weight charged for every pair of kept facts taken from two
// different blocks. C[0][0] = 0 and C[0][k>0] is infeasible.

#ifndef SOFTREPAIR_DP_SOLVER_HPP_
#define SOFTREPAIR_DP_SOLVER_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "softrepair/classifier.hpp"
#include "softrepair/cost.hpp"
#include "softrepair/model.hpp"
#include "softrepair/rational.hpp"

namespace softrepair {

/// Facts grouped by equal projection on `key_attrs`. Blocks are ordered by
/// their smallest fact id; facts inside a block are sorted by weight
/// descending, ties by fact id ascending.
struct BlockPartition {
  std::vector<AttrIndex> key_attrs;
  std::vector<std::vector<FactId>> blocks;
};

/// Sorts ids by weight descending, then id ascending.
inline void sort_heaviest_first(const Database& db, std::vector<FactId>& ids) {
  std::sort(ids.begin(), ids.end(), [&](FactId a, FactId b) {
    const auto& wa = db.fact(a).weight;
    const auto& wb = db.fact(b).weight;
    if (wa != wb) return wa > wb;
    return a < b;
  });
}

inline BlockPartition partition(const Database& db,
                                std::span<const FactId> facts,
                                std::vector<AttrIndex> attrs) {
  for (AttrIndex a : attrs) {
    if (a >= db.schema().arity()) {
      throw SchemaMismatchError("partition attribute out of range");
    }
  }
  BlockPartition out;
  std::map<std::vector<std::string>, std::size_t> index;
  std::vector<FactId> sorted(facts.begin(), facts.end());
  std::sort(sorted.begin(), sorted.end());
  for (FactId id : sorted) {
    auto key = project(db.fact(id), attrs);
    auto [it, inserted] = index.emplace(std::move(key), out.blocks.size());
    if (inserted) out.blocks.emplace_back();
    out.blocks[it->second].push_back(id);
  }
  for (auto& block : out.blocks) sort_heaviest_first(db, block);
  out.key_attrs = std::move(attrs);
  return out;
}

/// The first t facts of a heaviest-first subblock.
inline FactSet top(std::size_t t, std::span<const FactId> subblock) {
  if (t > subblock.size()) {
    throw std::out_of_range("top: t = " + std::to_string(t) +
                            " exceeds subblock size " +
                            std::to_string(subblock.size()));
  }
  return normalize(FactSet(subblock.begin(), subblock.begin() + t));
}

namespace detail {

// Cost of keeping exactly k facts; nullopt is infeasible.
using DpCost = std::optional<Rational>;

// Knapsack-style merge of per-block cost vectors. `inner[j][t]` is the cost
// of keeping t facts of block j. Records the chosen t for every (j, k).
struct BlockMerge {
  std::vector<DpCost> cost;                   // C[q][k]
  std::vector<std::vector<std::size_t>> pick;  // pick[j][k] = t, j is 1-based

  BlockMerge(const std::vector<std::vector<Rational>>& inner,
             const Rational& cross_weight) {
    cost = {Rational(0)};  // j = 0: only k = 0 is feasible.
    pick.emplace_back(1, 0);
    std::size_t size_so_far = 0;
    for (const auto& block : inner) {
      const std::size_t block_size = block.size() - 1;
      const std::size_t total = size_so_far + block_size;
      std::vector<DpCost> next(total + 1);
      std::vector<std::size_t> choice(total + 1, 0);
      for (std::size_t k = 0; k <= total; ++k) {
        const std::size_t t_lo = k > size_so_far ? k - size_so_far : 0;
        const std::size_t t_hi = std::min(k, block_size);
        for (std::size_t t = t_lo; t <= t_hi; ++t) {
          const DpCost& prev = cost[k - t];
          if (!prev) continue;
          Rational c = *prev + block[t];
          if (!cross_weight.is_zero() && t > 0 && k > t) {
            c += cross_weight *
                 Rational(static_cast<std::int64_t>(t * (k - t)));
          }
          // Strict comparison: the smallest t wins ties.
          if (!next[k] || c < *next[k]) {
            next[k] = std::move(c);
            choice[k] = t;
          }
        }
      }
      cost = std::move(next);
      pick.push_back(std::move(choice));
      size_so_far = total;
    }
  }

  // Largest k attaining the minimum.
  std::size_t argmin() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < cost.size(); ++k) {
      if (cost[k] && (!cost[best] || *cost[k] <= *cost[best])) best = k;
    }
    return best;
  }

  // Per-block t values realizing C[q][k], in block order.
  std::vector<std::size_t> split(std::size_t k) const {
    std::vector<std::size_t> ts(pick.size() - 1, 0);
    for (std::size_t j = pick.size() - 1; j >= 1; --j) {
      ts[j - 1] = pick[j][k];
      k -= ts[j - 1];
    }
    return ts;
  }

  std::vector<Rational> costs() const {
    std::vector<Rational> out;
    out.reserve(cost.size());
    for (const auto& c : cost) {
      if (!c) throw std::logic_error("block merge left an infeasible entry");
      out.push_back(*c);
    }
    return out;
  }
};

// Deletion costs of a heaviest-first list: out[t] = weight outside top(t).
inline std::vector<Rational> prefix_deletion_costs(
    const Database& db, std::span<const FactId> heaviest_first) {
  Rational total;
  for (FactId id : heaviest_first) total += db.fact(id).weight;
  std::vector<Rational> out;
  out.reserve(heaviest_first.size() + 1);
  out.push_back(total);
  for (FactId id : heaviest_first) {
    total -= db.fact(id).weight;
    out.push_back(total);
  }
  return out;
}

}  // namespace detail

/// Exact solver for a single nontrivial FD X -> Y: blocks by X, subblocks
/// by Y within each block, and one block merge per block with cross
/// weight w_phi.
inline RepairResult solve_single_fd(const Database& db, const FD& fd) {
  if (!fd.attributes().subset_of(db.schema().all())) {
    throw SchemaMismatchError("FD mentions attribute outside the schema");
  }
  if (fd.trivial()) {
    throw ClassificationError(
        "solve_single_fd requires a nontrivial FD; every subset is consistent "
        "with a trivial FD");
  }
  const FactSet all = db.all_ids();
  const BlockPartition blocks = partition(db, all, fd.lhs.members());
  const auto rhs = fd.rhs.members();
  FactSet kept;
  Rational table_cost;
  for (const auto& block : blocks.blocks) {
    const BlockPartition subblocks = partition(db, block, rhs);
    std::vector<std::vector<Rational>> inner;
    inner.reserve(subblocks.blocks.size());
    for (const auto& sub : subblocks.blocks) {
      inner.push_back(detail::prefix_deletion_costs(db, sub));
    }
    const detail::BlockMerge merge(inner, fd.weight);
    const std::size_t best = merge.argmin();
    table_cost += *merge.cost[best];
    const auto ts = merge.split(best);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const FactSet chosen = top(ts[j], subblocks.blocks[j]);
      kept.insert(kept.end(), chosen.begin(), chosen.end());
    }
  }
  RepairResult result =
      make_result(db, FDSet({fd}), std::move(kept), "dp_single_fd");
  if (result.cost.total != table_cost) {
    throw std::logic_error("dp_single_fd: table cost " +
                           table_cost.to_string() +
                           " differs from witness cost " +
                           result.cost.total.to_string());
  }
  return result;
}

namespace detail {

// One node of the nested-block DP: the facts of D^tau at level `level`.
struct LcNode {
  std::size_t level = 0;
  std::vector<FactId> facts;  // heaviest first
  std::vector<std::unique_ptr<LcNode>> children;
  std::unique_ptr<BlockMerge> merge;  // null at the leaf level
  std::vector<Rational> cost;         // C[level, tau, q, k] for every k
};

inline std::unique_ptr<LcNode> build_lc_node(const Database& db,
                                             const EliminationTrace& trace,
                                             std::size_t level,
                                             std::vector<FactId> facts) {
  auto node = std::make_unique<LcNode>();
  node->level = level;
  sort_heaviest_first(db, facts);
  node->facts = std::move(facts);
  if (level == trace.steps.size()) {
    // No FDs left: keep the k heaviest facts.
    node->cost = prefix_deletion_costs(db, node->facts);
    return node;
  }
  const auto& step = trace.steps[level];
  const BlockPartition blocks = partition(db, node->facts, {step.attribute});
  std::vector<std::vector<Rational>> inner;
  inner.reserve(blocks.blocks.size());
  for (const auto& block : blocks.blocks) {
    node->children.push_back(build_lc_node(db, trace, level + 1, block));
    inner.push_back(node->children.back()->cost);
  }
  node->merge = std::make_unique<BlockMerge>(inner, step.consensus_weight);
  node->cost = node->merge->costs();
  return node;
}

inline void collect_lc(const LcNode& node, std::size_t k, FactSet& out) {
  if (!node.merge) {
    const FactSet chosen = top(k, node.facts);
    out.insert(out.end(), chosen.begin(), chosen.end());
    return;
  }
  const auto ts = node.merge->split(k);
  for (std::size_t j = 0; j < ts.size(); ++j) {
    collect_lc(*node.children[j], ts[j], out);
  }
}

}  // namespace detail

/// Exact solver for FD sets emptied by lhs/consensus elimination.
///
/// Level l partitions D^tau by the l-th eliminated attribute; pairs drawn
/// from different blocks violate exactly the FDs in which that attribute is
/// a consensus attribute, charged at the step's consensus weight. Each
/// nested block is one tree node, so every (level, D^tau) table is
/// computed once. Throws ClassificationError if `trace` does not empty
/// `delta`.
inline RepairResult solve_lc(const Database& db, const FDSet& delta,
                             const EliminationTrace& trace) {
  delta.validate(db.schema());
  validate_trace(delta, trace);
  const auto root = detail::build_lc_node(db, trace, 0, db.all_ids());
  std::size_t best = 0;
  for (std::size_t k = 1; k < root->cost.size(); ++k) {
    if (root->cost[k] <= root->cost[best]) best = k;
  }
  FactSet kept;
  detail::collect_lc(*root, best, kept);
  RepairResult result = make_result(db, delta, std::move(kept), "dp_lc");
  if (result.cost.total != root->cost[best]) {
    throw std::logic_error("dp_lc: table cost " + root->cost[best].to_string() +
                           " differs from witness cost " +
                           result.cost.total.to_string());
  }
  return result;
}

/// Cost table C[1, ∅, q, k] for every k, exposed for tests.
inline std::vector<Rational> lc_cost_by_size(const Database& db,
                                             const FDSet& delta,
                                             const EliminationTrace& trace) {
  validate_trace(delta, trace);
  return detail::build_lc_node(db, trace, 0, db.all_ids())->cost;
}

}  // namespace softrepair

#endif  // SOFTREPAIR_DP_SOLVER_HPP_
