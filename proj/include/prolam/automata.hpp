#pragma once

// Deterministic finite automata over a named alphabet, the evaluation of
// Church-typed denotation elements against a DFA's letter actions, the
// translation of DFA languages into term languages, transition monoids
// (with representative words), and the level of a Church-typed approximant
// inside a finite monoid.  The last of these evaluates the approximant at
// base cardinality |M|, which for term-backed families works far beyond
// the stored cutoff.

#include "prolam/profinite.hpp"
#include "prolam/reglang.hpp"

#include <set>
#include <vector>

namespace prolam {

struct Dfa {
  Alphabet alphabet;
  int q = 0;                                     // states are [q]
  std::vector<std::vector<std::int64_t>> delta;  // one table per letter
  std::int64_t q0 = 0;
  std::set<std::int64_t> final;

  bool operator==(const Dfa& o) const = default;
};

// throws error describing the first violated invariant, if any
void validate_dfa(const Dfa& d);

// the state reached from q0 by folding the word left to right
std::int64_t run(const Dfa& d, const std::vector<int>& word);
std::int64_t run(const Dfa& d, const std::string& word);
bool dfa_accepts(const Dfa& d, const std::vector<int>& word);
bool dfa_accepts(const Dfa& d, const std::string& word);

// the evaluation functional: apply a Church-typed element to the letter
// tables of the DFA, then to the start state
std::int64_t eval_church(const Dfa& d, const Element& f,
                         const Config& cfg = {});

// the term language of the DFA: Church terms whose evaluation against the
// DFA's letter actions lands in a final state
RegLanguage language_of_dfa_as_reg(const Dfa& d);

// decision procedure for the word language of an accepting set at the
// Church type: w is in iff the word's functional lies in the set
class WordLanguage {
 public:
  WordLanguage(int alphabet_size, int q, std::vector<Nat> accepting);

  int alphabet_size() const { return n_; }
  int q() const { return q_; }

  bool contains(const std::vector<int>& word, const Config& cfg = {}) const;

  // the same decision for a singleton accepting set, phrased as the
  // finite intersection of one-final-state DFA checks: every pair of a
  // letter-table tuple and a start state must send the word where the
  // target functional sends it
  static bool singleton_contains_via_dfas(const Element& x,
                                          const std::vector<int>& word,
                                          const Config& cfg = {});

 private:
  int n_ = 0, q_ = 0;
  std::vector<Nat> accepting_;  // sorted
};

// transformation monoid generated by a DFA's letter actions (plus the
// identity), with shortest representative words and the full composition
// table; element 0 is the unit
struct MonoidPresentation {
  Alphabet alphabet;
  int degree = 0;                                   // tables act on [degree]
  std::vector<std::vector<std::int64_t>> elements;  // transformation tables
  std::int64_t unit = 0;
  std::vector<std::int64_t> letter_of;              // h(letter) per letter
  std::vector<std::vector<std::int64_t>> mult;      // mult[i][j] = i then j
  std::vector<std::vector<int>> reps;               // shortlex witnesses

  std::int64_t size() const {
    return static_cast<std::int64_t>(elements.size());
  }
};

MonoidPresentation transition_monoid(const Dfa& d);

// the homomorphism w |-> delta_w as a monoid element index
std::int64_t monoid_hom(const MonoidPresentation& m,
                        const std::vector<int>& word);
std::int64_t monoid_hom(const MonoidPresentation& m, const std::string& word);

// the unique idempotent power of element x in the monoid
std::int64_t monoid_omega(const MonoidPresentation& m, std::int64_t x);

// the right-regular (Cayley) DFA of an abstract multiplication table:
// states are the monoid elements, each listed generator acts by right
// multiplication, and the start state is the unit.  Validates the monoid
// laws.  Its transition monoid recovers the submonoid the generators
// generate, acting faithfully.
Dfa right_regular_dfa(const std::vector<std::vector<std::int64_t>>& mult,
                      std::int64_t unit,
                      const std::vector<std::int64_t>& generators,
                      Alphabet letter_names, std::set<std::int64_t> final);

// the element of m determined by a Church-typed family: evaluate the
// family at level |m| against the right-multiplication tables, starting
// from the unit.  For iota(church_term(w)) this is monoid_hom(m, w).
std::int64_t proword_level_of_approximant(const Approximant& theta,
                                          const MonoidPresentation& m,
                                          const Config& cfg = {});

}  // namespace prolam
