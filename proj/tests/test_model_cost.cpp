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
#include <set>
#include <sstream>
#include <stdexcept>

#include "fixtures.hpp"

namespace softrepair {
namespace {

using testing::flights;

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(Rational::parse("5"), Rational(5));
  EXPECT_EQ(Rational::parse("1/3"), Rational(BigInt(1), BigInt(3)));
  EXPECT_EQ(Rational::parse(" -2/4 "), Rational(BigInt(-1), BigInt(2)));
  EXPECT_EQ(Rational::parse("0.5"), Rational(BigInt(1), BigInt(2)));
  EXPECT_EQ(Rational::parse("2.25"), Rational(BigInt(9), BigInt(4)));
  EXPECT_EQ(Rational::parse("1/3").to_string(), "1/3");
  EXPECT_EQ(Rational(7).to_string(), "7");
}

TEST(Rational, RejectsMalformedInput) {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "1e5", "0x10"}) {
    EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(Rational, ArithmeticAgreesWithCrossMultiplication) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 12);
  for (int i = 0; i < 1000; ++i) {
    const int a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    const Rational x{BigInt(a), BigInt(b)};
    const Rational y{BigInt(c), BigInt(d)};
    EXPECT_EQ(x + y, Rational(BigInt(a * d + c * b), BigInt(b * d)));
    EXPECT_EQ(x * y, Rational(BigInt(a * c), BigInt(b * d)));
    EXPECT_EQ(x - y + y, x);
    EXPECT_EQ(x < y, a * d < c * b);
    EXPECT_EQ(x == y, a * d == c * b);
  }
}

TEST(AttrSet, SetAlgebra) {
  const AttrSet ab = AttrSet::of({0, 1});
  const AttrSet bc = AttrSet::of({1, 2});
  EXPECT_EQ((ab | bc), AttrSet::of({0, 1, 2}));
  EXPECT_EQ((ab & bc), AttrSet::of({1}));
  EXPECT_EQ((ab - bc), AttrSet::of({0}));
  EXPECT_TRUE(AttrSet::of({1}).subset_of(ab));
  EXPECT_FALSE(bc.subset_of(ab));
  EXPECT_EQ(ab.members(), (std::vector<AttrIndex>{0, 1}));
}

TEST(Schema, RejectsEmptyAndDuplicateAttributes) {
  EXPECT_THROW(Schema("R", {}), SchemaMismatchError);
  EXPECT_THROW(Schema("R", {"A", "A"}), SchemaMismatchError);
  const Schema s("R", {"A", "B"});
  EXPECT_EQ(s.index_of("B"), 1U);
  EXPECT_THROW(s.index_of("C"), SchemaMismatchError);
}

TEST(Database, FlightsHaveTotalWeightThirteen) {
  const Database db = flights();
  EXPECT_EQ(db.size(), 6U);
  EXPECT_EQ(db.total_weight(), Rational(13));
}

TEST(Database, RejectsBadFacts) {
  Database db(Schema("R", {"A", "B"}));
  db.add({"a", "b"}, 1);
  EXPECT_THROW(db.add({"a", "b"}, 2), ModelError);
  EXPECT_THROW(db.add({"a"}, 1), ModelError);
  EXPECT_THROW(db.add({"a", "c"}, -1), ModelError);
  EXPECT_EQ(db.size(), 1U);
}

TEST(FD, ViolationDefinition) {
  const Database db = flights();
  const FDSet d = testing::delta1();
  // f1, f3 share the flight but not the airline.
  EXPECT_TRUE(is_violation(db.fact(0), db.fact(2), d[0]));
  // f1, f2 agree on flight, airline and date but not destination.
  EXPECT_FALSE(is_violation(db.fact(0), db.fact(1), d[0]));
  EXPECT_TRUE(is_violation(db.fact(0), db.fact(1), d[1]));
  // A fact never conflicts with itself.
  EXPECT_FALSE(is_violation(db.fact(0), db.fact(0), d[0]));
}

TEST(FD, ViolationIsSymmetric) {
  std::mt19937_64 rng(7);
  for (const auto& t : testing::sweep_templates()) {
    const FDSet d = testing::random_weighted(t, rng);
    const Database db = random_database(t.schema, 8, 3, testing::sweep_weights(), rng);
    for (const auto& fd : d) {
      for (const auto& f : db.facts()) {
        for (const auto& g : db.facts()) {
          EXPECT_EQ(is_violation(f, g, fd), is_violation(g, f, fd));
        }
      }
    }
  }
}

TEST(FD, TrivialFdHasNoViolations) {
  const Schema s = testing::abc_schema();
  const FD fd = make_fd(s, {"A", "B"}, {"B"}, 3);
  EXPECT_TRUE(fd.trivial());
  Database db(s, {{{"a", "b", "c"}}, {{"a", "b", "d"}}, {{"a", "x", "c"}}});
  EXPECT_EQ(violations(db, db.all_ids(), fd).size(), 0U);
}

TEST(FDSet, RejectsDuplicatesAndNegativeWeights) {
  const Schema s = testing::ab_schema();
  EXPECT_THROW(FDSet({make_fd(s, {"A"}, {"B"}, 1), make_fd(s, {"A"}, {"B"}, 2)}),
               ModelError);
  EXPECT_THROW(FDSet({FD{AttrSet::of({0}), AttrSet::of({1}), Rational(-1)}}),
               ModelError);
  const FDSet merged =
      FDSet::merged({make_fd(s, {"A"}, {"B"}, 1), make_fd(s, {"A"}, {"B"}, 2)});
  ASSERT_EQ(merged.size(), 1U);
  EXPECT_EQ(merged[0].weight, Rational(3));
}

TEST(FDSet, ValidateAgainstSchema) {
  const FDSet d({FD{AttrSet::of({0}), AttrSet::of({5}), Rational(1)}});
  EXPECT_THROW(d.validate(testing::ab_schema()), SchemaMismatchError);
  EXPECT_NO_THROW(testing::delta1().validate(testing::flight_schema()));
}

TEST(FD, PrintsInSpecSyntax) {
  const FDSet d = testing::delta1();
  EXPECT_EQ(to_string(d[0], testing::flight_schema()), "Flight -> Airline @ 5");
  EXPECT_EQ(to_string(d[1], testing::flight_schema()),
            "Flight,Airline,Date -> Destination @ 1");
}

// --- cost engine ---

TEST(Cost, FlightRepairs) {
  const Database db = flights();
  const FDSet d = testing::delta1();
  EXPECT_EQ(cost(db, {1, 3, 4}, d).total, Rational(8));
  EXPECT_EQ(cost(db, {0, 5}, d).total, Rational(6));
  const CostBreakdown e3 = cost(db, {0, 1, 5}, d);
  EXPECT_EQ(e3.total, Rational(5));
  EXPECT_EQ(e3.deletion_cost, Rational(4));
  EXPECT_EQ(e3.violation_count_per_fd, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(e3.violation_cost(), Rational(1));
}

TEST(Cost, EmptySubsetCostsTotalWeight) {
  const Database db = flights();
  EXPECT_EQ(cost(db, {}, testing::delta1()).total, Rational(13));
  EXPECT_EQ(shifted_cost(db, {}, testing::delta1()), Rational(0));
}

TEST(Cost, ShiftedCostOfBestFlightRepair) {
  EXPECT_EQ(shifted_cost(flights(), {0, 1, 5}, testing::delta1()), Rational(-8));
}

TEST(Cost, ViolationsOfBipartiteGraph) {
  const Database db = testing::bipartite_uniform(1);
  const FDSet d = testing::two_key(1, 1);
  using P = std::pair<FactId, FactId>;
  EXPECT_EQ(violations(db, db.all_ids(), d[0]).pairs,
            (std::vector<P>{{0, 1}, {0, 2}, {1, 2}, {3, 4}}));
  EXPECT_EQ(violations(db, db.all_ids(), d[1]).pairs,
            (std::vector<P>{{0, 3}, {1, 4}, {2, 5}}));
}

TEST(Cost, MakeResultNormalizes) {
  const RepairResult r = make_result(flights(), testing::delta1(), {5, 0, 1}, "x");
  EXPECT_EQ(r.kept, (FactSet{0, 1, 5}));
  EXPECT_EQ(r.cost.total, Rational(5));
}

TEST(Cost, RejectsUnknownFactIds) {
  EXPECT_THROW(cost(flights(), {9}, testing::delta1()), std::out_of_range);
}

// Blocks of sizes s_i, each with pairwise distinct rhs values, produce
// sum_i C(s_i, 2) violations.
TEST(Cost, ViolationCountMatchesClosedForm) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> blocks(1, 5), size(1, 6);
  const Schema s = testing::ab_schema();
  const FD fd = make_fd(s, {"A"}, {"B"}, 1);
  for (int round = 0; round < 100; ++round) {
    Database db(s);
    std::size_t expected = 0;
    const int k = blocks(rng);
    for (int b = 0; b < k; ++b) {
      const int m = size(rng);
      expected += static_cast<std::size_t>(m * (m - 1) / 2);
      for (int i = 0; i < m; ++i) {
        db.add({"a" + std::to_string(b), "b" + std::to_string(i)}, 1);
      }
    }
    EXPECT_EQ(violations(db, db.all_ids(), fd).size(), expected);
  }
}

TEST(Cost, ShiftIdentityOnRandomSubsets) {
  std::mt19937_64 rng(5);
  for (const auto& t : testing::sweep_templates()) {
    const FDSet d = testing::random_weighted(t, rng);
    const Database db = random_database(t.schema, 7, 3, testing::sweep_weights(), rng);
    for (std::uint32_t mask = 0; mask < (1U << db.size()); ++mask) {
      FactSet e;
      for (FactId i = 0; i < db.size(); ++i) {
        if ((mask >> i) & 1U) e.push_back(i);
      }
      EXPECT_EQ(cost(db, e, d).total, shifted_cost(db, e, d) + db.total_weight());
    }
  }
}

}  // namespace
}  // namespace softrepair
