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

#ifndef SOFTREPAIR_MIN_COST_FLOW_HPP_
#define SOFTREPAIR_MIN_COST_FLOW_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace softrepair {

// Successive shortest paths with node potentials on integral capacities.
//
// Costs may be negative on forward edges as long as the network is a DAG
// whose node ids are a topological order; potentials are seeded by one
// pass over the nodes in id order, after which every Dijkstra runs on
// nonnegative reduced costs. `Cost` must be an exact ordered ring (an
// integer type or a big integer).
template <typename Cost>
class MinCostFlow {
 public:
  using Capacity = std::int64_t;

  struct Arc {
    std::size_t from;
    std::size_t to;
    Capacity capacity;
    Capacity flow;
    Cost cost;

    Capacity residual() const { return capacity - flow; }
  };

  explicit MinCostFlow(std::size_t num_nodes)
      : adjacency_(num_nodes), potential_(num_nodes) {}

  std::size_t num_nodes() const { return adjacency_.size(); }

  /// Adds a forward arc and its residual twin; returns the forward arc id.
  /// Arc ids are even; the twin of arc e is e ^ 1.
  std::size_t add_arc(std::size_t from, std::size_t to, Capacity capacity,
                      Cost cost) {
    if (from >= num_nodes() || to >= num_nodes()) {
      throw std::out_of_range("MinCostFlow: arc endpoint out of range");
    }
    if (from >= to) {
      throw std::invalid_argument(
          "MinCostFlow: node ids must be a topological order");
    }
    const std::size_t id = arcs_.size();
    arcs_.push_back(Arc{from, to, capacity, 0, cost});
    arcs_.push_back(Arc{to, from, 0, 0, -cost});
    adjacency_[from].push_back(id);
    adjacency_[to].push_back(id + 1);
    potentials_ready_ = false;
    return id;
  }

  const Arc& arc(std::size_t id) const { return arcs_.at(id); }
  std::size_t num_arcs() const { return arcs_.size(); }

  /// Sum of flow * cost over forward arcs.
  Cost total_cost() const {
    Cost sum = 0;
    for (std::size_t e = 0; e < arcs_.size(); e += 2) {
      sum += Cost(arcs_[e].flow) * arcs_[e].cost;
    }
    return sum;
  }

  /// Pushes flow along one cheapest residual source-sink path, at most
  /// `limit` units. Returns the amount pushed and the path cost per unit,
  /// or nullopt when the sink is unreachable.
  std::optional<std::pair<Capacity, Cost>> augment(std::size_t source,
                                                   std::size_t sink,
                                                   Capacity limit) {
    if (!potentials_ready_) seed_potentials(source);
    const std::size_t n = num_nodes();
    std::vector<std::optional<Cost>> dist(n);
    std::vector<std::size_t> via(n, kNone);
    using Entry = std::pair<Cost, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[source] = Cost(0);
    queue.emplace(Cost(0), source);
    while (!queue.empty()) {
      auto [d, u] = queue.top();
      queue.pop();
      if (*dist[u] < d) continue;
      for (std::size_t e : adjacency_[u]) {
        const Arc& a = arcs_[e];
        if (a.residual() <= 0) continue;
        const Cost reduced = a.cost + potential_[u] - potential_[a.to];
        if (reduced < 0) {
          throw std::logic_error("MinCostFlow: negative reduced cost");
        }
        Cost nd = d + reduced;
        if (!dist[a.to] || nd < *dist[a.to]) {
          dist[a.to] = nd;
          via[a.to] = e;
          queue.emplace(std::move(nd), a.to);
        }
      }
    }
    if (!dist[sink]) return std::nullopt;
    // Nodes not reached stay unreachable: augmentation only adds residual
    // arcs between reached nodes.
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v]) potential_[v] += *dist[v];
    }
    Capacity amount = limit;
    for (std::size_t v = sink; v != source; v = arcs_[via[v]].from) {
      amount = std::min(amount, arcs_[via[v]].residual());
    }
    Cost path_cost = 0;
    for (std::size_t v = sink; v != source; v = arcs_[via[v]].from) {
      const std::size_t e = via[v];
      arcs_[e].flow += amount;
      arcs_[e ^ 1U].flow -= amount;
      path_cost += arcs_[e].cost;
    }
    return std::make_pair(amount, path_cost);
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // Shortest distances from `source` over all forward arcs, in topological
  // (id) order. Valid for every residual arc while the flow is zero.
  void seed_potentials(std::size_t source) {
    std::vector<std::optional<Cost>> dist(num_nodes());
    dist[source] = Cost(0);
    for (std::size_t u = 0; u < num_nodes(); ++u) {
      if (!dist[u]) continue;
      for (std::size_t e : adjacency_[u]) {
        if (e % 2 != 0) continue;
        const Arc& a = arcs_[e];
        Cost nd = *dist[u] + a.cost;
        if (!dist[a.to] || nd < *dist[a.to]) dist[a.to] = std::move(nd);
      }
    }
    for (std::size_t v = 0; v < num_nodes(); ++v) {
      potential_[v] = dist[v] ? *dist[v] : Cost(0);
    }
    for (const Arc& a : arcs_) {
      if (a.flow != 0) {
        throw std::logic_error("MinCostFlow: potentials seeded on nonzero flow");
      }
    }
    potentials_ready_ = true;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Cost> potential_;
  bool potentials_ready_ = false;
};

}  // namespace softrepair

#endif  // SOFTREPAIR_MIN_COST_FLOW_HPP_
