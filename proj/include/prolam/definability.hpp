#pragma once

// Definable elements of a denotation: the image of the closed terms of a
// type under interpretation.  Exactness is certified only where a sound
// argument exists (level one, word closures at Church types, first-order
// types, uninhabited types, or a full denotation); everything else is an
// honest lower bound produced by bounded normal-form enumeration.

#include "prolam/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace prolam {

struct DefSet {
  Type type;
  int q = 0;
  bool exact = false;
  // which certification produced the set: "level-one-singleton",
  // "church-word-closure", "first-order-projections", "uninhabited-empty",
  // "full-denotation", or "enumeration" (lower bound)
  std::string method;
  int max_size_searched = 0;  // largest term size the enumerator visited
  std::vector<Nat> elements;  // sorted ascending
  std::map<Nat, Term> witnesses;

  bool contains(const Nat& index) const;
};

// all closed beta-normal eta-long terms of the type with at most max_size
// nodes, ordered by size then construction order (deterministic)
std::vector<Term> enumerate_normal_forms(const Type& type, int max_size);

// decision procedure for inhabitation by a closed term, with a witness
bool is_inhabited(const Type& type);
std::optional<Term> inhabitant(const Type& type);

// definable elements of den(type, q); budget < 0 means cfg.term_budget
DefSet def_set(const Type& type, int q, int budget = -1,
               const Config& cfg = {});

// exact definable set at the Church type of the alphabet: the image of the
// word-interpretation map, computed by breadth-first closure under
// one-letter extension; witnesses are Church encodings of words
DefSet church_def_set(const Alphabet& alphabet, int q, const Config& cfg = {});

// the restriction map den-level-q -> den-level-q_to on definable elements,
// computed through witnesses; requires q >= q_to >= 1
std::map<Nat, Nat> restrict_def(const DefSet& at_q, int q_to,
                                const Config& cfg = {});
// same map packaged as a DefSet at the lower level (witnesses carried over)
DefSet restrict_def_set(const DefSet& at_q, int q_to, const Config& cfg = {});

}  // namespace prolam
