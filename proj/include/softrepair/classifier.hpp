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

// FD-set analysis: attribute closure, the two simplification procedures
// (removable pairs, and lhs/consensus attribute elimination), matching
// constraint detection, and routing of an FD set to a solver.

#ifndef SOFTREPAIR_CLASSIFIER_HPP_
#define SOFTREPAIR_CLASSIFIER_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "softrepair/model.hpp"
#include "softrepair/rational.hpp"

namespace softrepair {

/// Raised when a solver is handed an FD set or trace it cannot handle.
class ClassificationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Least superset of `attrs` closed under every FD of `delta`.
inline AttrSet closure(AttrSet attrs, const FDSet& delta) {
  AttrSet result = attrs;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& fd : delta) {
      if (fd.lhs.subset_of(result) && !fd.rhs.subset_of(result)) {
        result = result | fd.rhs;
        changed = true;
      }
    }
  }
  return result;
}

inline FDSet remove_trivial(const FDSet& delta) {
  std::vector<FD> out;
  for (const auto& fd : delta) {
    if (!fd.trivial()) out.push_back(fd);
  }
  return FDSet::merged(std::move(out));
}

/// Delta - attrs: drops `attrs` from both sides of every FD. FDs that become
/// identical are merged with summed weight.
inline FDSet remove_attributes(const FDSet& delta, AttrSet attrs) {
  std::vector<FD> out;
  out.reserve(delta.size());
  for (const auto& fd : delta) {
    out.push_back(FD{fd.lhs - attrs, fd.rhs - attrs, fd.weight});
  }
  return FDSet::merged(std::move(out));
}

namespace detail {

// Exhaustive removable-pair search, memoized on the set of removed
// attributes (the residual FD set is a function of it).
class SimplifySearch {
 public:
  static constexpr int kMaxAttributes = 16;

  explicit SimplifySearch(const FDSet& delta) : delta_(remove_trivial(delta)) {
    if (delta_.attributes().size() > kMaxAttributes) {
      throw std::length_error(
          "removable-pair search supports at most 16 attributes in the FD set");
    }
  }

  bool run() { return emptiable(AttrSet{}); }

 private:
  bool emptiable(AttrSet removed) {
    if (auto it = memo_.find(removed.bits()); it != memo_.end()) {
      return it->second;
    }
    const FDSet current = remove_trivial(remove_attributes(delta_, removed));
    bool result = current.empty();
    if (!result) {
      const auto attrs = current.attributes().members();
      const std::size_t m = attrs.size();
      const std::uint64_t count = std::uint64_t{1} << m;
      std::vector<AttrSet> subsets(count);
      std::vector<AttrSet> closures(count);
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        AttrSet s;
        for (std::size_t i = 0; i < m; ++i) {
          if ((mask >> i) & 1U) s.insert(attrs[i]);
        }
        subsets[mask] = s;
        closures[mask] = closure(s, current);
      }
      // Which FDs contain each candidate on their lhs, as a bitmask over FDs.
      std::vector<std::uint64_t> covers(count, 0);
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (std::size_t f = 0; f < current.size(); ++f) {
          if (subsets[mask].subset_of(current[f].lhs)) {
            covers[mask] |= std::uint64_t{1} << f;
          }
        }
      }
      const std::uint64_t every_fd = current.size() >= 64
                                         ? ~std::uint64_t{0}
                                         : (std::uint64_t{1} << current.size()) - 1;
      for (std::uint64_t x = 0; x < count && !result; ++x) {
        for (std::uint64_t y = x; y < count && !result; ++y) {
          if ((x | y) == 0) continue;
          if (closures[x] != closures[y]) continue;
          if ((covers[x] | covers[y]) != every_fd) continue;
          result = emptiable(removed | subsets[x] | subsets[y]);
        }
      }
    }
    memo_.emplace(removed.bits(), result);
    return result;
  }

  FDSet delta_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

}  // namespace detail

/// True iff Delta can be emptied by repeatedly removing a removable pair
/// (X, Y): equal closures, XY nonempty, every FD has X or Y on its lhs.
///
/// Throws std::length_error when more than 16 attributes appear in Delta.
inline bool can_empty_simplify(const FDSet& delta) {
  return detail::SimplifySearch(delta).run();
}

/// One lhs/consensus elimination step: the attribute removed, the FD set it
/// was removed from (trivial FDs already dropped) and the total weight of
/// the FDs of that set in which the attribute is a consensus attribute.
struct EliminationStep {
  AttrIndex attribute = 0;
  FDSet fds;
  Rational consensus_weight;
};

struct EliminationTrace {
  std::vector<EliminationStep> steps;

  std::vector<AttrIndex> order() const {
    std::vector<AttrIndex> out;
    for (const auto& s : steps) out.push_back(s.attribute);
    return out;
  }
};

/// Attribute `a` is an lhs or a consensus attribute of every FD in `delta`.
inline bool is_lc_attribute(AttrIndex a, const FDSet& delta) {
  for (const auto& fd : delta) {
    if (!fd.lhs.contains(a) && !fd.is_consensus_attr(a)) return false;
  }
  return true;
}

inline Rational consensus_weight(AttrIndex a, const FDSet& delta) {
  Rational w;
  for (const auto& fd : delta) {
    if (fd.is_consensus_attr(a)) w += fd.weight;
  }
  return w;
}

/// Greedy lhs/consensus elimination, trying attributes in schema order.
///
/// Greedy is complete here: an attribute that is lhs-or-consensus in every
/// FD stays so after other attributes are removed, so no choice can block a
/// later one. Returns nullopt when no attribute qualifies before Delta is
/// empty.
inline std::optional<EliminationTrace> lc_elimination_order(
    const FDSet& delta, const Schema& schema) {
  delta.validate(schema);
  EliminationTrace trace;
  FDSet current = remove_trivial(delta);
  while (!current.empty()) {
    std::optional<AttrIndex> pick;
    for (AttrIndex a = 0; a < schema.arity(); ++a) {
      if (is_lc_attribute(a, current)) {
        pick = a;
        break;
      }
    }
    if (!pick) return std::nullopt;
    trace.steps.push_back(
        EliminationStep{*pick, current, consensus_weight(*pick, current)});
    current = remove_trivial(remove_attributes(current, AttrSet::of({*pick})));
  }
  return trace;
}

/// Checks that `trace` is a valid elimination of `delta`; throws
/// ClassificationError otherwise.
inline void validate_trace(const FDSet& delta, const EliminationTrace& trace) {
  FDSet current = remove_trivial(delta);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    if (current.empty()) {
      throw ClassificationError("elimination trace has steps after the FD set "
                                "became empty");
    }
    if (!is_lc_attribute(step.attribute, current)) {
      throw ClassificationError("trace step " + std::to_string(i) +
                                " removes an attribute that is not an lhs or "
                                "consensus attribute of every FD");
    }
    if (step.consensus_weight != consensus_weight(step.attribute, current)) {
      throw ClassificationError("trace step " + std::to_string(i) +
                                " records the wrong consensus weight");
    }
    current =
        remove_trivial(remove_attributes(current, AttrSet::of({step.attribute})));
  }
  if (!current.empty()) {
    throw ClassificationError("elimination trace does not empty the FD set");
  }
}

/// Two FDs X -> Y, X' -> Y' with X∪Y = X'∪Y' = X∪X' = all attributes.
inline bool is_matching_constraint(const FDSet& delta, const Schema& schema) {
  if (delta.size() != 2) return false;
  const AttrSet all = schema.all();
  const FD& first = delta[0];
  const FD& second = delta[1];
  return (first.lhs | first.rhs) == all && (second.lhs | second.rhs) == all &&
         (first.lhs | second.lhs) == all;
}

enum class RouteKind { kLcSequence, kMatching, kApproxOnly };
enum class Hardness { kTractable, kApxHardSubset, kUnknown };

inline std::string to_string(RouteKind k) {
  switch (k) {
    case RouteKind::kLcSequence: return "LC_SEQUENCE";
    case RouteKind::kMatching: return "MATCHING";
    case RouteKind::kApproxOnly: return "APPROX_ONLY";
  }
  return "?";
}

inline std::string to_string(Hardness h) {
  switch (h) {
    case Hardness::kTractable: return "TRACTABLE";
    case Hardness::kApxHardSubset: return "APX_HARD_SUBSET";
    case Hardness::kUnknown: return "UNKNOWN";
  }
  return "?";
}

struct SolverRoute {
  RouteKind kind = RouteKind::kApproxOnly;
  Hardness hardness = Hardness::kUnknown;
  /// Present iff kind == kLcSequence.
  std::optional<EliminationTrace> trace;
};

/// True when some subset of `delta` cannot be emptied by removable-pair
/// steps. Throws std::length_error for FD sets with more than 20 FDs.
inline bool has_hard_subset(const FDSet& delta) {
  const FDSet fds = remove_trivial(delta);
  if (fds.size() > 20) {
    throw std::length_error("hard-subset check supports at most 20 FDs");
  }
  const std::uint64_t count = std::uint64_t{1} << fds.size();
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    std::vector<FD> subset;
    for (std::size_t i = 0; i < fds.size(); ++i) {
      if ((mask >> i) & 1U) subset.push_back(fds[i]);
    }
    if (!can_empty_simplify(FDSet(std::move(subset)))) return true;
  }
  return false;
}

/// Routes (schema, Delta): lhs/consensus DP if possible, else the flow
/// reduction for matching constraints, else approximation only.
inline SolverRoute classify(const FDSet& delta, const Schema& schema) {
  SolverRoute route;
  if (auto trace = lc_elimination_order(delta, schema)) {
    route.kind = RouteKind::kLcSequence;
    route.trace = std::move(trace);
    route.hardness = Hardness::kTractable;
    return route;
  }
  if (is_matching_constraint(delta, schema)) {
    route.kind = RouteKind::kMatching;
    route.hardness = Hardness::kTractable;
    return route;
  }
  route.kind = RouteKind::kApproxOnly;
  try {
    route.hardness =
        has_hard_subset(delta) ? Hardness::kApxHardSubset : Hardness::kUnknown;
  } catch (const std::length_error&) {
    route.hardness = Hardness::kUnknown;
  }
  return route;
}

}  // namespace softrepair

#endif  // SOFTREPAIR_CLASSIFIER_HPP_
