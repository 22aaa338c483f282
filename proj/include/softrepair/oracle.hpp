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

// Exhaustive optimum over all 2^n subsets, for small n.

#ifndef SOFTREPAIR_ORACLE_HPP_
#define SOFTREPAIR_ORACLE_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "softrepair/cost.hpp"
#include "softrepair/model.hpp"
#include "softrepair/rational.hpp"

namespace softrepair {

struct OracleResult {
  Rational best_cost;
  /// Every minimizing subset, in ascending bitmask order.
  std::vector<FactSet> all_optima;

  bool is_optimum(const FactSet& subset) const {
    const FactSet s = normalize(subset);
    for (const auto& o : all_optima) {
      if (o == s) return true;
    }
    return false;
  }
};

inline constexpr std::size_t kOracleDefaultLimit = 16;

namespace detail {

// All weights scaled by a common denominator so the enumeration runs on
// integers. `Int` is std::int64_t when the scaled totals fit, BigInt
// otherwise.
template <typename Int>
OracleResult enumerate_subsets(const Database& db,
                               const std::vector<Int>& fact_weight,
                               const std::vector<std::vector<Int>>& pair_weight,
                               const BigInt& scale) {
  const std::size_t n = db.size();
  const std::uint64_t count = std::uint64_t{1} << n;
  Int total = 0;
  for (const auto& w : fact_weight) total += w;
  std::optional<Int> best;
  std::vector<std::uint64_t> optima;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    Int c = total;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) c -= fact_weight[i];
    }
    // Deletion cost alone already loses.
    if (best && c > *best) continue;
    for (std::size_t i = 0; i < n && (!best || c <= *best); ++i) {
      if (!((mask >> i) & 1U)) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if ((mask >> j) & 1U) c += pair_weight[i][j];
      }
    }
    if (!best || c < *best) {
      best = c;
      optima.clear();
      optima.push_back(mask);
    } else if (c == *best) {
      optima.push_back(mask);
    }
  }
  OracleResult out;
  out.best_cost = Rational(BigInt(*best), scale);
  for (std::uint64_t mask : optima) {
    FactSet s;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) s.push_back(i);
    }
    out.all_optima.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

/// Minimum of cost(E | D) over every E ⊆ D and all minimizers.
/// Throws std::length_error when |D| > limit.
inline OracleResult brute_force_optimal(const Database& db, const FDSet& delta,
                                        std::size_t limit = kOracleDefaultLimit) {
  if (db.size() > limit || db.size() > 30) {
    throw std::length_error("oracle: " + std::to_string(db.size()) +
                            " facts exceeds the limit of " +
                            std::to_string(limit));
  }
  delta.validate(db.schema());
  const std::size_t n = db.size();

  // Combined violation weight of every pair: sum of w_phi over violated FDs.
  std::vector<std::vector<Rational>> pair(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (const auto& fd : delta) {
        if (is_violation(db.fact(i), db.fact(j), fd)) pair[i][j] += fd.weight;
      }
    }
  }
  BigInt scale = 1;
  const auto absorb = [&](const Rational& r) {
    const BigInt d = r.denominator();
    scale = scale / boost::multiprecision::gcd(scale, d) * d;
  };
  for (const auto& f : db.facts()) absorb(f.weight);
  for (const auto& row : pair) {
    for (const auto& r : row) absorb(r);
  }
  const auto scaled = [&](const Rational& r) {
    return BigInt(r.numerator() * (scale / r.denominator()));
  };
  BigInt magnitude = 0;
  for (const auto& f : db.facts()) magnitude += scaled(f.weight);
  for (const auto& row : pair) {
    for (const auto& r : row) magnitude += scaled(r);
  }

  OracleResult result;
  if (magnitude < BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
    std::vector<std::int64_t> fw;
    for (const auto& f : db.facts()) {
      fw.push_back(scaled(f.weight).convert_to<std::int64_t>());
    }
    std::vector<std::vector<std::int64_t>> pw(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        pw[i][j] = scaled(pair[i][j]).convert_to<std::int64_t>();
      }
    }
    result = detail::enumerate_subsets<std::int64_t>(db, fw, pw, scale);
  } else {
    std::vector<BigInt> fw;
    for (const auto& f : db.facts()) fw.push_back(scaled(f.weight));
    std::vector<std::vector<BigInt>> pw(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) pw[i][j] = scaled(pair[i][j]);
    }
    result = detail::enumerate_subsets<BigInt>(db, fw, pw, scale);
  }
  if (cost(db, result.all_optima.front(), delta).total != result.best_cost) {
    throw std::logic_error("oracle: enumeration disagrees with cost engine");
  }
  return result;
}

}  // namespace softrepair

#endif  // SOFTREPAIR_ORACLE_HPP_
