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

// Exact solver for matching constraints via min-cost flow.
//
// For D over R(A, B) with A -> B (w1) and B -> A (w2), the network N_k is
//
//   s -> s'                capacity k, cost 0
//   s' -> v_a^i            one per i in 1..#a, cost 0
//   v_a^i -> v_a           cost (i - 1) w1
//   v_a -> u_b             one per fact R(a, b), cost -w_f
//   u_b -> u_b^i           cost (i - 1) w2
//   u_b^i -> t             cost 0
//
// with unit capacities except (s, s'). An integral min-cost flow of value k
// selects the k facts minimizing w_D(E); the best k (including k = 0)
// gives an optimal subset. General matching constraints X -> Y, X' -> Y'
// are reduced to this case by encoding pi_X(f) and pi_X'(f) as A and B.

#ifndef SOFTREPAIR_FLOW_SOLVER_HPP_
#define SOFTREPAIR_FLOW_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "softrepair/classifier.hpp"
#include "softrepair/cost.hpp"
#include "softrepair/min_cost_flow.hpp"
#include "softrepair/model.hpp"
#include "softrepair/rational.hpp"

namespace softrepair {

/// Raised when an instance does not fit the flow reduction.
class ReductionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FlowEdgeKind {
  kSource,      // (s, s')
  kFanInEntry,  // (s', v_a^i)
  kFanIn,       // (v_a^i, v_a)
  kFact,        // (v_a, u_b)
  kFanOut,      // (u_b, u_b^i)
  kFanOutExit,  // (u_b^i, t)
};

struct FlowEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::int64_t capacity = 1;
  Rational cost;
  FlowEdgeKind kind = FlowEdgeKind::kSource;
};

/// The network N_k. Node ids are a topological order:
/// s, s', fan-in nodes, A nodes, B nodes, fan-out nodes, t.
struct FlowNetwork {
  std::int64_t k = 0;
  std::size_t source = 0;
  std::size_t source_prime = 1;
  std::size_t sink = 0;
  std::vector<std::string> node_names;
  std::vector<FlowEdge> edges;

  std::vector<std::string> a_values;  // by A code
  std::vector<std::string> b_values;  // by B code
  std::size_t source_edge = 0;
  std::vector<std::vector<std::size_t>> fan_in_entry;  // [a][i - 1]
  std::vector<std::vector<std::size_t>> fan_in;        // [a][i - 1]
  std::vector<std::vector<std::size_t>> fan_out;       // [b][i - 1]
  std::vector<std::vector<std::size_t>> fan_out_exit;  // [b][i - 1]
  std::vector<std::size_t> fact_edge;                  // [fact id]
  std::vector<std::size_t> fact_a;                     // [fact id] -> A code
  std::vector<std::size_t> fact_b;                     // [fact id] -> B code

  std::size_t num_nodes() const { return node_names.size(); }
};

struct IntegralFlow {
  std::vector<std::int64_t> flow;  // per edge of the network
  std::int64_t value = 0;
  Rational cost;
};

/// Builds N_k for a database over a binary schema.
inline FlowNetwork build_network(const Database& db, std::int64_t k,
                                 const Rational& w1, const Rational& w2) {
  if (db.schema().arity() != 2) {
    throw ReductionError("flow network needs a binary schema R(A, B), got arity " +
                         std::to_string(db.schema().arity()));
  }
  if (k < 0 || k > static_cast<std::int64_t>(db.size())) {
    throw ReductionError("network capacity k must lie in [0, n]");
  }
  if (w1.is_negative() || w2.is_negative()) {
    throw ReductionError("FD weights must be nonnegative");
  }
  FlowNetwork net;
  net.k = k;
  std::map<std::string, std::size_t> a_code;
  std::map<std::string, std::size_t> b_code;
  std::vector<std::size_t> a_count;
  std::vector<std::size_t> b_count;
  for (const auto& f : db.facts()) {
    auto [ai, a_new] = a_code.emplace(f.values[0], net.a_values.size());
    if (a_new) {
      net.a_values.push_back(f.values[0]);
      a_count.push_back(0);
    }
    auto [bi, b_new] = b_code.emplace(f.values[1], net.b_values.size());
    if (b_new) {
      net.b_values.push_back(f.values[1]);
      b_count.push_back(0);
    }
    net.fact_a.push_back(ai->second);
    net.fact_b.push_back(bi->second);
    ++a_count[ai->second];
    ++b_count[bi->second];
  }

  const auto add_node = [&](std::string name) {
    net.node_names.push_back(std::move(name));
    return net.node_names.size() - 1;
  };
  const auto add_edge = [&](std::size_t from, std::size_t to,
                            std::int64_t cap, Rational cost,
                            FlowEdgeKind kind) {
    net.edges.push_back(FlowEdge{from, to, cap, std::move(cost), kind});
    return net.edges.size() - 1;
  };

  net.source = add_node("s");
  net.source_prime = add_node("s'");
  std::vector<std::vector<std::size_t>> fan_in_nodes(net.a_values.size());
  for (std::size_t a = 0; a < net.a_values.size(); ++a) {
    for (std::size_t i = 1; i <= a_count[a]; ++i) {
      fan_in_nodes[a].push_back(
          add_node("vA" + std::to_string(a) + "^" + std::to_string(i)));
    }
  }
  std::vector<std::size_t> a_nodes;
  for (std::size_t a = 0; a < net.a_values.size(); ++a) {
    a_nodes.push_back(add_node("vA" + std::to_string(a)));
  }
  std::vector<std::size_t> b_nodes;
  for (std::size_t b = 0; b < net.b_values.size(); ++b) {
    b_nodes.push_back(add_node("uB" + std::to_string(b)));
  }
  std::vector<std::vector<std::size_t>> fan_out_nodes(net.b_values.size());
  for (std::size_t b = 0; b < net.b_values.size(); ++b) {
    for (std::size_t i = 1; i <= b_count[b]; ++i) {
      fan_out_nodes[b].push_back(
          add_node("uB" + std::to_string(b) + "^" + std::to_string(i)));
    }
  }
  net.sink = add_node("t");

  net.source_edge =
      add_edge(net.source, net.source_prime, k, 0, FlowEdgeKind::kSource);
  net.fan_in_entry.resize(net.a_values.size());
  net.fan_in.resize(net.a_values.size());
  for (std::size_t a = 0; a < net.a_values.size(); ++a) {
    for (std::size_t i = 0; i < fan_in_nodes[a].size(); ++i) {
      net.fan_in_entry[a].push_back(add_edge(net.source_prime,
                                             fan_in_nodes[a][i], 1, 0,
                                             FlowEdgeKind::kFanInEntry));
      net.fan_in[a].push_back(
          add_edge(fan_in_nodes[a][i], a_nodes[a], 1,
                   w1 * Rational(static_cast<std::int64_t>(i)),
                   FlowEdgeKind::kFanIn));
    }
  }
  for (const auto& f : db.facts()) {
    net.fact_edge.push_back(add_edge(a_nodes[net.fact_a[f.id]],
                                     b_nodes[net.fact_b[f.id]], 1, -f.weight,
                                     FlowEdgeKind::kFact));
  }
  net.fan_out.resize(net.b_values.size());
  net.fan_out_exit.resize(net.b_values.size());
  for (std::size_t b = 0; b < net.b_values.size(); ++b) {
    for (std::size_t i = 0; i < fan_out_nodes[b].size(); ++i) {
      net.fan_out[b].push_back(
          add_edge(b_nodes[b], fan_out_nodes[b][i], 1,
                   w2 * Rational(static_cast<std::int64_t>(i)),
                   FlowEdgeKind::kFanOut));
      net.fan_out_exit[b].push_back(add_edge(fan_out_nodes[b][i], net.sink, 1,
                                             0, FlowEdgeKind::kFanOutExit));
    }
  }
  return net;
}

/// Sum of flow * cost.
inline Rational flow_cost(const FlowNetwork& net,
                          const std::vector<std::int64_t>& flow) {
  Rational sum;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    if (flow.at(e) != 0) sum += net.edges[e].cost * Rational(flow[e]);
  }
  return sum;
}

/// Capacity bounds on every edge and conservation at every node except
/// s and t.
inline bool is_feasible(const FlowNetwork& net,
                        const std::vector<std::int64_t>& flow) {
  if (flow.size() != net.edges.size()) return false;
  std::vector<std::int64_t> balance(net.num_nodes(), 0);
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    if (flow[e] < 0 || flow[e] > net.edges[e].capacity) return false;
    balance[net.edges[e].from] -= flow[e];
    balance[net.edges[e].to] += flow[e];
  }
  for (std::size_t v = 0; v < net.num_nodes(); ++v) {
    if (v != net.source && v != net.sink && balance[v] != 0) return false;
  }
  return true;
}

/// D[f]: facts whose (v_a, u_b) edge carries flow.
inline FactSet extract_repair(const FlowNetwork& net, const IntegralFlow& f) {
  FactSet out;
  for (FactId id = 0; id < net.fact_edge.size(); ++id) {
    if (f.flow.at(net.fact_edge[id]) == 1) out.push_back(id);
  }
  return out;
}

/// Rewrites fan-in and fan-out usage into prefix form: if ℓ units enter
/// v_a, they use fan-in slots 1..ℓ (likewise for u_b). Fact edges are kept.
/// Never increases the cost since slot costs are nondecreasing in i.
inline IntegralFlow canonicalize(const FlowNetwork& net, IntegralFlow f) {
  std::vector<std::int64_t> into_a(net.a_values.size(), 0);
  std::vector<std::int64_t> out_of_b(net.b_values.size(), 0);
  for (FactId id = 0; id < net.fact_edge.size(); ++id) {
    const std::int64_t x = f.flow.at(net.fact_edge[id]);
    into_a[net.fact_a[id]] += x;
    out_of_b[net.fact_b[id]] += x;
  }
  for (std::size_t a = 0; a < net.a_values.size(); ++a) {
    for (std::size_t i = 0; i < net.fan_in[a].size(); ++i) {
      const std::int64_t used = static_cast<std::int64_t>(i) < into_a[a] ? 1 : 0;
      f.flow[net.fan_in_entry[a][i]] = used;
      f.flow[net.fan_in[a][i]] = used;
    }
  }
  for (std::size_t b = 0; b < net.b_values.size(); ++b) {
    for (std::size_t i = 0; i < net.fan_out[b].size(); ++i) {
      const std::int64_t used =
          static_cast<std::int64_t>(i) < out_of_b[b] ? 1 : 0;
      f.flow[net.fan_out[b][i]] = used;
      f.flow[net.fan_out_exit[b][i]] = used;
    }
  }
  f.cost = flow_cost(net, f.flow);
  return f;
}

/// True when every fan-in and fan-out family is used as a prefix.
inline bool has_prefix_form(const FlowNetwork& net, const IntegralFlow& f) {
  const auto prefix = [&](const std::vector<std::size_t>& family) {
    bool seen_gap = false;
    for (std::size_t e : family) {
      if (f.flow.at(e) == 0) {
        seen_gap = true;
      } else if (seen_gap) {
        return false;
      }
    }
    return true;
  };
  for (const auto& fam : net.fan_in) {
    if (!prefix(fam)) return false;
  }
  for (const auto& fam : net.fan_out) {
    if (!prefix(fam)) return false;
  }
  return true;
}

/// f_E in N_k for k = |E|: each kept fact routes through the next free
/// fan-in slot of its A value and the next free fan-out slot of its B value.
inline IntegralFlow embed_subset(const FlowNetwork& net, const FactSet& subset) {
  if (static_cast<std::int64_t>(subset.size()) != net.k) {
    throw ReductionError("embed_subset: |E| must equal the network's k");
  }
  IntegralFlow f;
  f.flow.assign(net.edges.size(), 0);
  f.flow[net.source_edge] = net.k;
  std::vector<std::size_t> used_a(net.a_values.size(), 0);
  std::vector<std::size_t> used_b(net.b_values.size(), 0);
  for (FactId id : subset) {
    const std::size_t a = net.fact_a.at(id);
    const std::size_t b = net.fact_b.at(id);
    const std::size_t i = used_a[a]++;
    const std::size_t j = used_b[b]++;
    f.flow[net.fan_in_entry[a][i]] = 1;
    f.flow[net.fan_in[a][i]] = 1;
    f.flow[net.fact_edge[id]] = 1;
    f.flow[net.fan_out[b][j]] = 1;
    f.flow[net.fan_out_exit[b][j]] = 1;
  }
  f.value = net.k;
  f.cost = flow_cost(net, f.flow);
  return f;
}

namespace detail {

inline BigInt lcm_denominators(const FlowNetwork& net) {
  BigInt l = 1;
  for (const auto& e : net.edges) {
    const BigInt d = e.cost.denominator();
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  return l;
}

// Network scaled to integer costs, plus the mapping back to FlowNetwork
// edges.
struct ScaledFlow {
  MinCostFlow<BigInt> solver;
  std::vector<std::size_t> arc_of_edge;

  ScaledFlow(const FlowNetwork& net, std::int64_t source_capacity)
      : solver(net.num_nodes()) {
    const BigInt scale = lcm_denominators(net);
    arc_of_edge.reserve(net.edges.size());
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
      const auto& edge = net.edges[e];
      const BigInt c = edge.cost.numerator() * (scale / edge.cost.denominator());
      const std::int64_t cap =
          e == net.source_edge ? source_capacity : edge.capacity;
      arc_of_edge.push_back(solver.add_arc(edge.from, edge.to, cap, c));
    }
  }

  IntegralFlow snapshot(const FlowNetwork& net) const {
    IntegralFlow f;
    f.flow.reserve(net.edges.size());
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
      f.flow.push_back(solver.arc(arc_of_edge[e]).flow);
    }
    f.value = f.flow[net.source_edge];
    f.cost = flow_cost(net, f.flow);
    return f;
  }
};

}  // namespace detail

/// Integral min-cost max-flow on N_k, returned in prefix form.
inline IntegralFlow min_cost_max_flow(const FlowNetwork& net) {
  detail::ScaledFlow scaled(net, net.k);
  while (scaled.solver.augment(net.source, net.sink, net.k)) {
  }
  IntegralFlow raw = scaled.snapshot(net);
  IntegralFlow canonical = canonicalize(net, raw);
  if (canonical.cost != raw.cost) {
    throw std::logic_error("min_cost_max_flow: prefix form changed the cost");
  }
  return canonical;
}

struct FlowOptions {
  /// Solve N_1..N_n by successive augmentation on one network instead of n
  /// independent solves.
  bool warm_start = true;
  /// Check cost(f) = w_D(D[f]) for the optimum of every N_k, not only for
  /// the one returned.
  bool verify_each_k = true;
};

struct FlowStats {
  std::size_t mcmf_solves = 0;
  std::size_t cost_checks = 0;
  /// Optimal cost of N_k for k = 0..n (w_D of the best size-k subset).
  std::vector<Rational> cost_by_size;
};

namespace detail {

inline FDSet two_key_fds(const Rational& w1, const Rational& w2) {
  return FDSet({FD{AttrSet::of({0}), AttrSet::of({1}), w1},
                FD{AttrSet::of({1}), AttrSet::of({0}), w2}});
}

// Cost check for one MCMF optimum: the flow cost equals w_D of the facts
// it selects, recomputed from scratch by the cost engine.
inline void check_flow_cost(const Database& db, const FDSet& fds,
                            const FlowNetwork& net, const IntegralFlow& f,
                            FlowStats* stats) {
  const Rational expected = shifted_cost(db, extract_repair(net, f), fds);
  if (f.cost != expected) {
    throw std::logic_error("flow cost " + f.cost.to_string() +
                           " differs from w_D(D[f]) = " + expected.to_string());
  }
  if (!has_prefix_form(net, f)) {
    throw std::logic_error("MCMF optimum is not in prefix form");
  }
  if (stats) ++stats->cost_checks;
}

}  // namespace detail

/// Exact solver for R(A, B) with {A -> B @ w1, B -> A @ w2}.
inline RepairResult solve_two_key(const Database& db, const Rational& w1,
                                  const Rational& w2,
                                  const FlowOptions& options = {},
                                  FlowStats* stats = nullptr) {
  const FDSet fds = detail::two_key_fds(w1, w2);
  const auto n = static_cast<std::int64_t>(db.size());
  const FlowNetwork full = build_network(db, n, w1, w2);

  // k = 0 selects the empty set with w_D = 0.
  Rational best_cost = 0;
  IntegralFlow best;
  best.flow.assign(full.edges.size(), 0);
  std::vector<Rational> by_size = {Rational(0)};

  const auto consider = [&](const FlowNetwork& net, IntegralFlow f) {
    if (stats) ++stats->mcmf_solves;
    if (options.verify_each_k) detail::check_flow_cost(db, fds, net, f, stats);
    by_size.push_back(f.cost);
    // Ties go to the larger k: keep facts when it costs nothing.
    if (f.cost <= best_cost) {
      best_cost = f.cost;
      best = std::move(f);
    }
  };

  if (options.warm_start) {
    // One unit per augmentation; after k of them the flow is a min-cost
    // flow of value k, which is an optimum of N_k.
    detail::ScaledFlow scaled(full, n);
    for (std::int64_t k = 1; k <= n; ++k) {
      if (!scaled.solver.augment(full.source, full.sink, 1)) {
        throw std::logic_error("N_n must admit a flow of value n");
      }
      IntegralFlow raw = scaled.snapshot(full);
      IntegralFlow canonical = canonicalize(full, raw);
      if (canonical.cost != raw.cost) {
        throw std::logic_error("warm-start flow was not cost-optimal");
      }
      consider(full, std::move(canonical));
    }
  } else {
    for (std::int64_t k = 1; k <= n; ++k) {
      const FlowNetwork net = build_network(db, k, w1, w2);
      IntegralFlow f = min_cost_max_flow(net);
      if (f.value != k) throw std::logic_error("N_k must admit value k");
      consider(full, std::move(f));
    }
  }
  if (!options.verify_each_k && n > 0) {
    detail::check_flow_cost(db, fds, full, best, stats);
  }
  if (stats) stats->cost_by_size = by_size;

  RepairResult result =
      make_result(db, fds, extract_repair(full, best), "flow_two_key");
  if (result.cost.total != best_cost + db.total_weight()) {
    throw std::logic_error("flow solver: cost shift identity failed");
  }
  return result;
}

/// Exact solver for a matching constraint {X -> Y, X' -> Y'}. Each fact f
/// becomes (a(pi_X f), b(pi_X' f)) over R(A, B); since X ∪ X' covers the
/// schema, the correspondence is one-to-one and fact ids carry over.
inline RepairResult solve_matching(const Database& db, const FDSet& delta,
                                   const FlowOptions& options = {},
                                   FlowStats* stats = nullptr) {
  if (!is_matching_constraint(delta, db.schema())) {
    throw ClassificationError("FD set is not a matching constraint");
  }
  const auto x = delta[0].lhs.members();
  const auto x_prime = delta[1].lhs.members();
  std::map<std::vector<std::string>, std::size_t> a_code;
  std::map<std::vector<std::string>, std::size_t> b_code;
  Database reduced(Schema(db.schema().relation_name() + "_AB", {"A", "B"}));
  for (const auto& f : db.facts()) {
    const auto a = a_code.emplace(project(f, x), a_code.size()).first->second;
    const auto b =
        b_code.emplace(project(f, x_prime), b_code.size()).first->second;
    try {
      reduced.add({"a" + std::to_string(a), "b" + std::to_string(b)}, f.weight);
    } catch (const ModelError&) {
      throw ReductionError("two facts share both key projections");
    }
  }
  RepairResult inner =
      solve_two_key(reduced, delta[0].weight, delta[1].weight, options, stats);
  RepairResult result =
      make_result(db, delta, std::move(inner.kept), "flow_matching");
  if (result.cost.total != inner.cost.total) {
    throw std::logic_error("matching reduction changed the cost");
  }
  return result;
}

/// Debug dump: one edge per line, "from to capacity cost_num/cost_den".
inline void write_network(std::ostream& os, const FlowNetwork& net) {
  for (const auto& e : net.edges) {
    os << net.node_names[e.from] << ' ' << net.node_names[e.to] << ' '
       << e.capacity << ' ' << e.cost.numerator() << '/'
       << e.cost.denominator() << '\n';
  }
}

}  // namespace softrepair

#endif  // SOFTREPAIR_FLOW_SOLVER_HPP_
