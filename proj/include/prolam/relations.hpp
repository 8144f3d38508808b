#pragma once

// Binary relations between finite index sets, partial surjections (graphs
// of surjective partial functions), and the logical relation a base
// relation induces at every type:
//
//   [[o]](R) = R
//   [[A=>B]](R) = { (g,h) | forall (x,y) in [[A]](R): (g x, h y) in [[B]](R) }
//   [[A*B]](R) = componentwise, [[1]](R) = everything
//
// Arrow-level relations are never materialized wholesale; membership is
// decided by the recursive quantifier over the argument denotations (with
// memoization).  Partial surjections additionally get a direct structural
// exponential that scales to den-index spaces the relation matrix route
// cannot touch.

#include "prolam/model.hpp"

#include <optional>
#include <random>

namespace prolam {

struct Relation {
  std::int64_t lhs = 0, rhs = 0;  // related sets are [lhs] and [rhs]
  std::vector<bool> bits;         // row-major lhs x rhs incidence matrix

  static Relation empty(std::int64_t l, std::int64_t r);
  static Relation full(std::int64_t l, std::int64_t r);
  static Relation diagonal(std::int64_t n);

  bool contains(std::int64_t i, std::int64_t j) const {
    return bits[static_cast<std::size_t>(i * rhs + j)];
  }
  void add(std::int64_t i, std::int64_t j) {
    bits[static_cast<std::size_t>(i * rhs + j)] = true;
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs() const;
  bool operator==(const Relation& o) const = default;
};

// uniformly random relation, one coin per pair (deterministic in the rng)
Relation random_relation(std::int64_t l, std::int64_t r, std::mt19937_64& rng);

// graph of a partial function [lhs] -> [rhs] that is surjective onto [rhs]
struct PartialSurjection {
  std::int64_t lhs = 0, rhs = 0;
  std::vector<std::int64_t> map;  // length lhs, -1 = undefined

  bool defined(std::int64_t i) const { return map[static_cast<std::size_t>(i)] >= 0; }
  std::int64_t at(std::int64_t i) const { return map[static_cast<std::size_t>(i)]; }

  bool is_valid() const;  // entries in range and every target is hit
  Relation graph() const;

  // null unless the relation is a partial function surjective onto [rhs]
  static std::optional<PartialSurjection> from_relation(const Relation& r);

  // the canonical restriction map: identity on [q_to], undefined above
  static PartialSurjection identity_embedding(std::int64_t q_from,
                                              std::int64_t q_to);

  bool operator==(const PartialSurjection& o) const = default;
};

// every partial surjection [q] ->> [q_to], deterministic lexicographic
// order (by domain bitmask, then by assignment); empty iff q < q_to
std::vector<PartialSurjection> all_partial_surjections(std::int64_t q,
                                                       std::int64_t q_to);

// S => R on function-table index spaces: relates g in [R.lhs^S.lhs] to
// h in [R.rhs^S.rhs] iff every S-related argument pair maps to an
// R-related result pair.  Tables use the same little-endian digit
// encoding as arrow elements.
Relation rel_exponential(const Relation& S, const Relation& R,
                         const Config& cfg = {});

// the same construction on partial surjections, via rel_exponential on
// the graphs; the conversion back must succeed (closure property)
PartialSurjection psurj_exponential(const PartialSurjection& e,
                                    const PartialSurjection& f,
                                    const Config& cfg = {});

// structurally computed exponential; same value as psurj_exponential but
// never materializes a relation matrix, so it reaches larger index spaces
PartialSurjection psurj_exponential_direct(const PartialSurjection& e,
                                           const PartialSurjection& f,
                                           const Config& cfg = {});

// memoized membership oracle for [[A]](R) with R between [q] and [q_to]
class LogicalRelation {
public:
  explicit LogicalRelation(Relation base, Config cfg = {});

  int q() const { return static_cast<int>(base_.lhs); }
  int q_to() const { return static_cast<int>(base_.rhs); }

  bool member(const Type& A, const Element& x, const Element& y);
  bool member_index(const Type& A, const Nat& x, const Nat& y);

private:
  Relation base_;
  Config cfg_;
  std::map<std::tuple<std::string, Nat, Nat>, bool> memo_;
};

bool logical_relation_member(const Type& A, const Relation& R,
                             const Element& x, const Element& y,
                             const Config& cfg = {});

// [[A]](f) as a partial surjection between den(A, q) and den(A, q_to)
// index spaces, computed structurally
PartialSurjection logical_relation_of_psurj(const Type& A,
                                            const PartialSurjection& f,
                                            const Config& cfg = {});

}  // namespace prolam
