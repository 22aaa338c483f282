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

// Relational data model: schema, weighted facts, weighted FDs.

#ifndef SOFTREPAIR_MODEL_HPP_
#define SOFTREPAIR_MODEL_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "softrepair/rational.hpp"

namespace softrepair {

/// Raised when a schema, fact or FD is malformed or refers to an attribute
/// that the schema does not have.
class SchemaMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a database or FD set breaks one of its invariants.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using AttrIndex = std::size_t;
using FactId = std::size_t;

/// Sorted, duplicate-free list of fact ids. Subsets E of a database are
/// passed around in this form.
using FactSet = std::vector<FactId>;

inline constexpr std::size_t kMaxArity = 64;

/// Set of attribute positions of a schema, stored as a bitmask.
class AttrSet {
 public:
  constexpr AttrSet() = default;
  constexpr explicit AttrSet(std::uint64_t bits) : bits_(bits) {}

  static AttrSet of(std::initializer_list<AttrIndex> attrs) {
    AttrSet s;
    for (AttrIndex a : attrs) s.insert(a);
    return s;
  }
  static AttrSet all(std::size_t arity) {
    return AttrSet(arity >= 64 ? ~std::uint64_t{0}
                               : (std::uint64_t{1} << arity) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  constexpr bool contains(AttrIndex a) const { return (bits_ >> a) & 1U; }
  constexpr bool subset_of(AttrSet o) const { return (bits_ & ~o.bits_) == 0; }

  void insert(AttrIndex a) {
    if (a >= kMaxArity) throw SchemaMismatchError("attribute index too large");
    bits_ |= std::uint64_t{1} << a;
  }
  void erase(AttrIndex a) { bits_ &= ~(std::uint64_t{1} << a); }

  /// Members in increasing order.
  std::vector<AttrIndex> members() const {
    std::vector<AttrIndex> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<AttrIndex>(std::countr_zero(b)));
    }
    return out;
  }

  friend constexpr AttrSet operator|(AttrSet a, AttrSet b) {
    return AttrSet(a.bits_ | b.bits_);
  }
  friend constexpr AttrSet operator&(AttrSet a, AttrSet b) {
    return AttrSet(a.bits_ & b.bits_);
  }
  friend constexpr AttrSet operator-(AttrSet a, AttrSet b) {
    return AttrSet(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(AttrSet, AttrSet) = default;
  friend constexpr auto operator<=>(AttrSet, AttrSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Relation schema R(A_1, ..., A_k).
class Schema {
 public:
  Schema(std::string relation_name, std::vector<std::string> attributes)
      : relation_name_(std::move(relation_name)),
        attributes_(std::move(attributes)) {
    if (attributes_.empty()) {
      throw SchemaMismatchError("schema must have at least one attribute");
    }
    if (attributes_.size() > kMaxArity) {
      throw SchemaMismatchError("schema arity exceeds 64");
    }
    std::set<std::string> seen;
    for (const auto& a : attributes_) {
      if (a.empty()) throw SchemaMismatchError("empty attribute name");
      if (!seen.insert(a).second) {
        throw SchemaMismatchError("duplicate attribute '" + a + "'");
      }
    }
  }

  const std::string& relation_name() const { return relation_name_; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  std::size_t arity() const { return attributes_.size(); }
  const std::string& name(AttrIndex a) const { return attributes_.at(a); }

  std::optional<AttrIndex> find(std::string_view attr) const {
    for (AttrIndex i = 0; i < attributes_.size(); ++i) {
      if (attributes_[i] == attr) return i;
    }
    return std::nullopt;
  }

  AttrIndex index_of(std::string_view attr) const {
    if (auto i = find(attr)) return *i;
    throw SchemaMismatchError("unknown attribute '" + std::string(attr) +
                              "' in relation " + relation_name_);
  }

  AttrSet attr_set(std::span<const std::string> names) const {
    AttrSet s;
    for (const auto& n : names) s.insert(index_of(n));
    return s;
  }
  AttrSet attr_set(std::initializer_list<std::string> names) const {
    return attr_set(std::span<const std::string>(names.begin(), names.size()));
  }

  AttrSet all() const { return AttrSet::all(arity()); }

  /// Attribute names of `s`, in schema order.
  std::vector<std::string> names(AttrSet s) const {
    std::vector<std::string> out;
    for (AttrIndex a : s.members()) out.push_back(attributes_.at(a));
    return out;
  }

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  std::string relation_name_;
  std::vector<std::string> attributes_;
};

struct Fact {
  FactId id = 0;
  std::vector<std::string> values;
  Rational weight;
};

/// f[B_1 ... B_m] for attribute positions given in order.
inline std::vector<std::string> project(const Fact& f,
                                        std::span<const AttrIndex> attrs) {
  std::vector<std::string> out;
  out.reserve(attrs.size());
  for (AttrIndex a : attrs) {
    if (a >= f.values.size()) {
      throw SchemaMismatchError("projection attribute out of range");
    }
    out.push_back(f.values[a]);
  }
  return out;
}

/// Projection by attribute names; unknown names raise SchemaMismatchError.
inline std::vector<std::string> project(const Schema& schema, const Fact& f,
                                        std::span<const std::string> names) {
  std::vector<AttrIndex> attrs;
  attrs.reserve(names.size());
  for (const auto& n : names) attrs.push_back(schema.index_of(n));
  return project(f, attrs);
}

/// Row used to build a Database: constants in schema order plus a weight.
struct FactRow {
  std::vector<std::string> values;
  Rational weight{1};
};

/// A weighted set of facts over one relation. Fact ids are 0..n-1 in
/// insertion order. Duplicate value tuples are rejected.
class Database {
 public:
  explicit Database(Schema schema) : schema_(std::move(schema)) {}

  Database(Schema schema, std::vector<FactRow> rows)
      : schema_(std::move(schema)) {
    facts_.reserve(rows.size());
    for (auto& r : rows) add(std::move(r.values), std::move(r.weight));
  }

  /// Appends a fact and returns its id.
  FactId add(std::vector<std::string> values, Rational weight) {
    if (values.size() != schema_.arity()) {
      throw ModelError("fact has " + std::to_string(values.size()) +
                       " values, schema arity is " +
                       std::to_string(schema_.arity()));
    }
    if (weight.is_negative()) {
      throw ModelError("negative fact weight " + weight.to_string());
    }
    if (!seen_.insert(join(values)).second) {
      throw ModelError("duplicate fact (" + join(values, ", ") + ")");
    }
    const FactId id = facts_.size();
    facts_.push_back(Fact{id, std::move(values), std::move(weight)});
    return id;
  }

  const Schema& schema() const { return schema_; }
  const std::vector<Fact>& facts() const { return facts_; }
  const Fact& fact(FactId id) const { return facts_.at(id); }
  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }

  Rational total_weight() const {
    Rational sum;
    for (const auto& f : facts_) sum += f.weight;
    return sum;
  }

  /// Ids 0..n-1.
  FactSet all_ids() const {
    FactSet ids(facts_.size());
    for (FactId i = 0; i < ids.size(); ++i) ids[i] = i;
    return ids;
  }

 private:
  static std::string join(const std::vector<std::string>& values,
                          std::string_view sep = std::string_view("\x1f", 1)) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += sep;
      out += values[i];
    }
    return out;
  }

  Schema schema_;
  std::vector<Fact> facts_;
  std::unordered_set<std::string> seen_;
};

/// Weighted functional dependency lhs -> rhs over attribute positions.
struct FD {
  AttrSet lhs;
  AttrSet rhs;
  Rational weight{1};

  bool trivial() const { return rhs.subset_of(lhs); }
  /// A is a consensus attribute of ∅ -> Y when A ∈ Y.
  bool is_consensus_attr(AttrIndex a) const {
    return lhs.empty() && rhs.contains(a);
  }
  AttrSet attributes() const { return lhs | rhs; }
};

/// Constants of two facts agree on every attribute in `attrs`.
inline bool agree_on(const Fact& f, const Fact& g, AttrSet attrs) {
  for (std::uint64_t b = attrs.bits(); b != 0; b &= b - 1) {
    const auto a = static_cast<std::size_t>(std::countr_zero(b));
    if (f.values[a] != g.values[a]) return false;
  }
  return true;
}

/// {f, g} violates fd: agreement on the lhs and disagreement on the rhs.
/// A fact never conflicts with itself.
inline bool is_violation(const Fact& f, const Fact& g, const FD& fd) {
  if (&f == &g) return false;
  return agree_on(f, g, fd.lhs) && !agree_on(f, g, fd.rhs);
}

/// Ordered list of weighted FDs with distinct (lhs, rhs) pairs.
class FDSet {
 public:
  FDSet() = default;
  explicit FDSet(std::vector<FD> fds) : fds_(std::move(fds)) {
    for (std::size_t i = 0; i < fds_.size(); ++i) {
      if (fds_[i].weight.is_negative()) {
        throw ModelError("negative FD weight " + fds_[i].weight.to_string());
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (fds_[i].lhs == fds_[j].lhs && fds_[i].rhs == fds_[j].rhs) {
          throw ModelError("duplicate FD at positions " + std::to_string(j) +
                           " and " + std::to_string(i));
        }
      }
    }
  }

  /// Builds an FD set, summing the weights of FDs that share (lhs, rhs).
  /// Used for derived sets where removing attributes makes FDs coincide;
  /// coinciding FDs are violated by exactly the same pairs.
  static FDSet merged(std::vector<FD> fds) {
    std::vector<FD> out;
    for (auto& fd : fds) {
      auto it = std::find_if(out.begin(), out.end(), [&](const FD& o) {
        return o.lhs == fd.lhs && o.rhs == fd.rhs;
      });
      if (it == out.end()) {
        out.push_back(std::move(fd));
      } else {
        it->weight += fd.weight;
      }
    }
    return FDSet(std::move(out));
  }

  const std::vector<FD>& fds() const { return fds_; }
  std::size_t size() const { return fds_.size(); }
  bool empty() const { return fds_.empty(); }
  const FD& operator[](std::size_t i) const { return fds_.at(i); }
  auto begin() const { return fds_.begin(); }
  auto end() const { return fds_.end(); }

  /// Union of all attributes mentioned by some FD.
  AttrSet attributes() const {
    AttrSet s;
    for (const auto& fd : fds_) s = s | fd.attributes();
    return s;
  }

  /// Checks every FD against the schema's arity.
  void validate(const Schema& schema) const {
    for (const auto& fd : fds_) {
      if (!fd.attributes().subset_of(schema.all())) {
        throw SchemaMismatchError("FD mentions attribute outside relation " +
                                  schema.relation_name());
      }
    }
  }

 private:
  std::vector<FD> fds_;
};

/// Convenience for tests and examples: FD from attribute names.
inline FD make_fd(const Schema& schema, std::vector<std::string> lhs,
                  std::vector<std::string> rhs, Rational weight = 1) {
  return FD{schema.attr_set(lhs), schema.attr_set(rhs), std::move(weight)};
}

/// "A,B -> C @ w".
inline std::string to_string(const FD& fd, const Schema& schema) {
  std::string out;
  const auto side = [&](AttrSet s) {
    std::string r;
    for (const auto& n : schema.names(s)) {
      if (!r.empty()) r += ",";
      r += n;
    }
    return r;
  };
  out += side(fd.lhs);
  out += " -> ";
  out += side(fd.rhs);
  out += " @ ";
  out += fd.weight.to_string();
  return out;
}

/// Sorts and deduplicates a list of fact ids into a FactSet.
inline FactSet normalize(FactSet ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

/// D \ E for a FactSet E of `db`.
inline FactSet complement(const Database& db, const FactSet& kept) {
  std::vector<bool> in(db.size(), false);
  for (FactId id : kept) in.at(id) = true;
  FactSet out;
  for (FactId id = 0; id < db.size(); ++id) {
    if (!in[id]) out.push_back(id);
  }
  return out;
}

}  // namespace softrepair

#endif  // SOFTREPAIR_MODEL_HPP_
