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

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "fixtures.hpp"

namespace softrepair {
namespace {

TEST(Partition, GroupsByKeyHeaviestFirst) {
  const Database db = testing::flights();
  const BlockPartition p =
      partition(db, db.all_ids(), {db.schema().index_of("Flight")});
  ASSERT_EQ(p.blocks.size(), 2U);
  EXPECT_EQ(p.blocks[0], (std::vector<FactId>{0, 1, 2}));
  EXPECT_EQ(p.blocks[1], (std::vector<FactId>{5, 3, 4}));
}

TEST(Partition, EmptyKeyIsOneBlock) {
  const Database db = testing::flights();
  const BlockPartition p = partition(db, db.all_ids(), {});
  ASSERT_EQ(p.blocks.size(), 1U);
  EXPECT_EQ(p.blocks[0].size(), 6U);
}

TEST(Partition, TopTakesHeaviest) {
  const std::vector<FactId> sub = {5, 3, 4};
  EXPECT_EQ(top(2, sub), (FactSet{3, 5}));
  EXPECT_EQ(top(0, sub), FactSet{});
  EXPECT_THROW(top(4, sub), std::out_of_range);
}

TEST(BlockMerge, HandComputedTable) {
  // Two blocks with one fact each (weights 2 and 1), cross weight 3.
  const detail::BlockMerge m({{Rational(2), Rational(0)}, {Rational(1), Rational(0)}},
                             Rational(3));
  const auto c = m.costs();
  ASSERT_EQ(c.size(), 3U);
  EXPECT_EQ(c[0], Rational(3));
  EXPECT_EQ(c[1], Rational(1));  // keep the heavier fact
  EXPECT_EQ(c[2], Rational(3));  // keep both, pay one cross pair
  EXPECT_EQ(m.argmin(), 1U);
  EXPECT_EQ(m.split(1), (std::vector<std::size_t>{1, 0}));
}

TEST(BlockMerge, ArgminPrefersLargerK) {
  const detail::BlockMerge m({{Rational(1), Rational(0)}, {Rational(1), Rational(0)}},
                             Rational(1));
  // k=1 and k=2 both cost 1.
  EXPECT_EQ(m.argmin(), 2U);
}

TEST(SingleFd, SmallInstance) {
  const Schema s = testing::abc_schema();
  const Database db(s, {{{"a", "b", "c1"}, 2}, {{"a", "b2", "c1"}, 2},
                        {{"a", "b", "c2"}, 1}});
  const FD fd = make_fd(s, {"A"}, {"B"}, 1);
  const RepairResult r = solve_single_fd(db, fd);
  EXPECT_EQ(r.cost.total, Rational(2));
  EXPECT_EQ(r.solver, "dp_single_fd");
  EXPECT_TRUE(brute_force_optimal(db, FDSet({fd})).is_optimum(r.kept));
}

TEST(SingleFd, FlightsAirlineOnly) {
  const Database db = testing::flights();
  const FD fd = testing::delta1()[0];
  const RepairResult r = solve_single_fd(db, fd);
  EXPECT_EQ(r.cost.total, Rational(4));
  EXPECT_EQ(r.kept, (FactSet{0, 1, 5}));
}

TEST(SingleFd, RejectsTrivialFd) {
  const Schema s = testing::ab_schema();
  const Database db(s, {{{"a", "b"}}});
  EXPECT_THROW(solve_single_fd(db, make_fd(s, {"A", "B"}, {"A"}, 1)),
               ClassificationError);
}

TEST(SingleFd, EmptyDatabase) {
  const Schema s = testing::ab_schema();
  const RepairResult r = solve_single_fd(Database(s), make_fd(s, {"A"}, {"B"}, 1));
  EXPECT_TRUE(r.kept.empty());
  EXPECT_EQ(r.cost.total, Rational(0));
}

TEST(SingleFd, ZeroWeightFdKeepsEverything) {
  const Schema s = testing::ab_schema();
  const Database db(s, {{{"a", "b"}}, {{"a", "c"}}, {{"a", "d"}}});
  const RepairResult r = solve_single_fd(db, make_fd(s, {"A"}, {"B"}, 0));
  EXPECT_EQ(r.kept, (FactSet{0, 1, 2}));
  EXPECT_EQ(r.cost.total, Rational(0));
}

TEST(SingleFd, HeavyFdGivesCardinalityRepair) {
  // With w_phi far above the total fact weight, the optimum is consistent
  // and keeps the heaviest subblock of each block.
  const Schema s = testing::ab_schema();
  const Database db(s, {{{"a", "b"}, 1}, {{"a", "b2"}, 3}, {{"x", "y"}, 2}});
  const RepairResult r = solve_single_fd(db, make_fd(s, {"A"}, {"B"}, 100));
  EXPECT_EQ(r.kept, (FactSet{1, 2}));
  EXPECT_EQ(r.cost.total, Rational(1));
}

TEST(SingleFd, ConsensusFd) {
  const Schema s = testing::ab_schema();
  const Database db(s, {{{"a", "b"}, 2}, {{"a2", "b"}, 1}, {{"a3", "b"}, 1}});
  const FDSet d = parse_fd_spec(" -> A @ 1", s);
  const RepairResult r = solve_single_fd(db, d[0]);
  EXPECT_EQ(r.cost.total, brute_force_optimal(db, d).best_cost);
}

TEST(Lc, FlightsDelta1) {
  const Database db = testing::flights();
  const FDSet d = testing::delta1();
  const auto trace = lc_elimination_order(d, db.schema());
  ASSERT_TRUE(trace);
  const RepairResult r = solve_lc(db, d, *trace);
  EXPECT_EQ(r.cost.total, Rational(5));
  EXPECT_EQ(r.kept, (FactSet{0, 1, 5}));
  EXPECT_EQ(r.solver, "dp_lc");
}

TEST(Lc, CostBySizeMatchesOracleMinimumPerSize) {
  const Database db = testing::flights();
  const FDSet d = testing::delta1();
  const auto trace = *lc_elimination_order(d, db.schema());
  const auto by_size = lc_cost_by_size(db, d, trace);
  ASSERT_EQ(by_size.size(), 7U);
  std::vector<std::optional<Rational>> best(7);
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    FactSet e;
    for (FactId i = 0; i < 6; ++i) {
      if ((mask >> i) & 1U) e.push_back(i);
    }
    const Rational c = cost(db, e, d).total;
    auto& b = best[e.size()];
    if (!b || c < *b) b = c;
  }
  for (std::size_t k = 0; k <= 6; ++k) EXPECT_EQ(by_size[k], *best[k]) << k;
}

TEST(Lc, RejectsForeignTrace) {
  const Database db = testing::flights();
  const auto trace = *lc_elimination_order(testing::delta1(), db.schema());
  EXPECT_THROW(solve_lc(db, testing::delta2(), trace), ClassificationError);
}

TEST(Lc, MatchesOracleOnRandomLcInstances) {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (const auto& t : testing::sweep_templates()) {
    for (int seed = 0; seed < 30; ++seed) {
      const FDSet d = testing::random_weighted(t, rng);
      const auto trace = lc_elimination_order(d, t.schema);
      if (!trace) break;
      std::uniform_int_distribution<std::size_t> size(0, 8);
      const Database db =
          random_database(t.schema, size(rng), 3, testing::sweep_weights(), rng);
      const RepairResult r = solve_lc(db, d, *trace);
      const OracleResult o = brute_force_optimal(db, d);
      EXPECT_EQ(r.cost.total, o.best_cost) << t.name;
      EXPECT_TRUE(o.is_optimum(r.kept)) << t.name;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 60);
}

TEST(Lc, Deterministic) {
  const Database db = testing::flights();
  const FDSet d = testing::delta1();
  const auto trace = *lc_elimination_order(d, db.schema());
  const FactSet first = solve_lc(db, d, trace).kept;
  for (int i = 0; i < 5; ++i) EXPECT_EQ(solve_lc(db, d, trace).kept, first);
}

}  // namespace
}  // namespace softrepair
