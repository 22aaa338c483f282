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

// Shared instances for the test suites.

#ifndef SOFTREPAIR_TESTS_FIXTURES_HPP_
#define SOFTREPAIR_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "softrepair.hpp"

namespace softrepair::testing {

inline Schema flight_schema() {
  return Schema("Flights", {"Flight", "Airline", "Date", "Origin",
                            "Destination", "Airplane"});
}

// The six flights with weights 3, 2, 1, 2, 1, 4 (ids 0..5 are f1..f6).
inline Database flights() {
  return Database(
      flight_schema(),
      {{{"UA123", "United Airlines", "01/01/2021", "LA", "NY", "N652NW"}, 3},
       {{"UA123", "United Airlines", "01/01/2021", "NY", "UT", "N652NW"}, 2},
       {{"UA123", "Delta", "01/01/2021", "LA", "NY", "N652NW"}, 1},
       {{"DL456", "Southwest", "02/01/2021", "NC", "MA", "N713DX"}, 2},
       {{"DL456", "Southwest", "03/01/2021", "NJ", "FL", "N245DX"}, 1},
       {{"DL456", "Delta", "03/01/2021", "CA", "IL", "N819US"}, 4}});
}

inline FDSet delta1() {
  const Schema s = flight_schema();
  return FDSet({make_fd(s, {"Flight"}, {"Airline"}, 5),
                make_fd(s, {"Flight", "Airline", "Date"}, {"Destination"}, 1)});
}

inline FDSet delta2() {
  const Schema s = flight_schema();
  return FDSet({make_fd(s, {"Flight"}, {"Airline"}, 5),
                make_fd(s, {"Flight", "Date"}, {"Destination"}, 1)});
}

inline FDSet flight_matching(Rational w1 = 1, Rational w2 = 1) {
  const Schema s = flight_schema();
  return FDSet({make_fd(s, {"Flight", "Airline", "Date"},
                        {"Origin", "Destination", "Airplane"}, w1),
                make_fd(s, {"Origin", "Destination", "Airplane", "Date"},
                        {"Flight", "Airline"}, w2)});
}

inline FDSet flight_non_matching() {
  const Schema s = flight_schema();
  return FDSet({make_fd(s, {"Flight", "Date"},
                        {"Airline", "Origin", "Destination", "Airplane"}, 1),
                make_fd(s, {"Origin", "Destination", "Airplane", "Date"},
                        {"Flight", "Airline"}, 1)});
}

inline Schema ab_schema() { return Schema("R", {"A", "B"}); }
inline Schema abc_schema() { return Schema("R", {"A", "B", "C"}); }

inline FDSet two_key(Rational w1, Rational w2) {
  const Schema s = ab_schema();
  return FDSet({make_fd(s, {"A"}, {"B"}, std::move(w1)),
                make_fd(s, {"B"}, {"A"}, std::move(w2))});
}

// Six edges of a small bipartite graph; ids 0..5 are f1..f6.
inline Database bipartite(const std::vector<Rational>& w) {
  const std::vector<std::vector<std::string>> edges = {
      {"a1", "b1"}, {"a1", "b2"}, {"a1", "b3"},
      {"a2", "b1"}, {"a2", "b2"}, {"a3", "b3"}};
  Database db(ab_schema());
  for (std::size_t i = 0; i < edges.size(); ++i) db.add(edges[i], w.at(i));
  return db;
}

inline Database bipartite_uniform(const Rational& w) {
  return bipartite(std::vector<Rational>(6, w));
}

// FD templates over R(A, B, C) used by the random sweeps.
struct FdTemplate {
  std::string name;
  Schema schema;
  std::vector<std::string> lines;  // "LHS -> RHS" without weight
};

inline std::vector<FdTemplate> sweep_templates() {
  return {
      {"A->B", ab_schema(), {"A -> B"}},
      {"A->B|B->A", ab_schema(), {"A -> B", "B -> A"}},
      {"A->B|B->C", abc_schema(), {"A -> B", "B -> C"}},
      {"A->B|B->A|B->C", abc_schema(), {"A -> B", "B -> A", "B -> C"}},
      {"AB->C|C->B", abc_schema(), {"A,B -> C", "C -> B"}},
      {"->A|B->C", abc_schema(), {" -> A", "B -> C"}},
      {"A->B|AB->C", abc_schema(), {"A -> B", "A,B -> C"}},
      {"AC->B|B->A", abc_schema(), {"A,C -> B", "B -> A,C"}},
  };
}

inline const WeightRange& sweep_weights() {
  static const WeightRange range{0, 4, 4};
  return range;
}

inline FDSet random_weighted(const FdTemplate& t, std::mt19937_64& rng) {
  std::string text;
  for (const auto& line : t.lines) {
    text += line + " @ " + random_weight(sweep_weights(), rng).to_string() + "\n";
  }
  return parse_fd_spec(text, t.schema);
}

inline std::mt19937_64 seeded(std::uint64_t a, std::uint64_t b = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                    0x5eedU};
  return std::mt19937_64(seq);
}

}  // namespace softrepair::testing

#endif  // SOFTREPAIR_TESTS_FIXTURES_HPP_
