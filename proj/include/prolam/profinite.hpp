#pragma once

// Truncated profinite terms: an Approximant stores one denotation element
// per base cardinality q in {1..k} together with per-component
// definability evidence.  Families arising from a single closed term
// (iota) are natural automatically; arbitrary families can be checked for
// naturality (one logical-relation membership per partial surjection
// between levels) and for parametricity (all binary relations, sampled
// where exhaustion is infeasible).  The idempotent-power operator is
// provided both on single endo-elements and as an approximant family.

#include "prolam/definability.hpp"
#include "prolam/relations.hpp"

#include <optional>
#include <vector>

namespace prolam {

// definability evidence for one component of an approximant
struct Evidence {
  enum class Kind { Witness, Certified, Deferred };
  Kind kind = Kind::Deferred;
  std::optional<Term> witness;  // present iff kind == Witness

  static Evidence with_witness(Term t);
  static Evidence certified();
  static Evidence deferred();
};

struct NaturalityReport;

class Approximant {
 public:
  // validated construction: components must inhabit den(type, q) for
  // q = 1..k; witness evidence must interpret to its component; certified
  // evidence must be backed by membership in the definable set
  static Approximant make(Type type, std::vector<Element> components,
                          std::vector<Evidence> evidence,
                          const Config& cfg = {});

  const Type& type() const { return type_; }
  int cutoff() const { return k_; }
  const Element& component(int q) const;  // 1 <= q <= cutoff
  const Evidence& evidence(int q) const;
  bool naturality_checked() const { return checked_natural_; }

  // level-q evaluation of a Church-typed approximant on concrete letter
  // tables (endofunctions of [q]): the image of `start`.  Levels above the
  // cutoff are reached through the family's defining term when it has one
  // (term-backed families evaluate the term body; omega-of-word families
  // evaluate the underlying word and take the idempotent power); families
  // without such an origin refuse beyond the cutoff.
  std::int64_t church_action(
      int q, const std::vector<std::vector<std::int64_t>>& letter_tables,
      std::int64_t start, const Config& cfg = {}) const;

  // componentwise equality of the element families (evidence is not part
  // of the identity of an approximant)
  bool operator==(const Approximant& o) const;
  bool operator!=(const Approximant& o) const { return !(*this == o); }

 private:
  // how levels beyond the cutoff are derivable, if at all
  struct Origin {
    enum class Kind { None, Term, OmegaOfWord };
    Kind kind = Kind::None;
    std::optional<prolam::Term> term;
  };

  Approximant(Type type, int k, std::vector<Element> components,
              std::vector<Evidence> evidence, Origin origin);

  Type type_;
  int k_ = 0;
  std::vector<Element> components_;  // entry i is the level-(i+1) component
  std::vector<Evidence> evidence_;
  Origin origin_;
  bool checked_natural_ = false;

  friend Approximant iota(const Term&, int, const Config&);
  friend NaturalityReport check_natural(Approximant&, const Config&);
  friend Approximant compose(const Approximant&, const Approximant&,
                             const Config&);
  friend Approximant apply_term_to_approximant(const Term&, const Approximant&,
                                               const Config&);
  friend Approximant apply_approximant(const Approximant&, const Approximant&,
                                       const Config&);
  friend Approximant omega_approximant(const Type&, int, const Config&);
  friend Approximant word_omega(const Approximant&, const Config&);
};

struct NaturalityReport {
  bool ok = false;
  int q = 0, q_to = 0;                // failing level pair when !ok
  std::optional<PartialSurjection> f; // violated partial surjection
};

struct ParametricityReport {
  bool ok = false;
  bool exhaustive = false;  // false when any level pair was sampled
  int q = 0, q_to = 0;
  std::optional<Relation> r;
};

// the family q |-> interpret(m, q) for q = 1..k, witnessed by m itself
Approximant iota(const Term& m, int k, const Config& cfg = {});

// naturality: for every q >= q_to in 1..k and every partial surjection
// f: [q] ->> [q_to], the lifted relation relates the two components.
// Marks the approximant on success.
NaturalityReport check_natural(Approximant& theta, const Config& cfg = {});

// parametricity: for every ordered level pair q, q_to <= k and every
// relation R between [q] and [q_to], the lifted relation relates the two
// components.  Exhaustive when both levels are <= 2; otherwise
// cfg.samples seeded random relations per pair.
ParametricityReport check_parametric(const Approximant& theta,
                                     const Config& cfg = {});

// componentwise composition: theta at A=>B then sigma at B=>C gives A=>C
Approximant compose(const Approximant& theta, const Approximant& sigma,
                    const Config& cfg = {});

// components q |-> apply(interpret(m, q), theta_q) for m : A=>B, theta at A
Approximant apply_term_to_approximant(const Term& m, const Approximant& theta,
                                      const Config& cfg = {});

// componentwise application of an approximant at A=>B to one at A
Approximant apply_approximant(const Approximant& fn, const Approximant& arg,
                              const Config& cfg = {});

// the unique idempotent power of f in the composition monoid of
// den(A=>A, q): iterate powers until the first repetition (preperiod i,
// period p) and return f^m for the least multiple m of p with m >= i
Element omega_element(const Type& a, int q, const Element& f,
                      const Config& cfg = {});

// the idempotent-power operator as a family at (A=>A)=>(A=>A): component
// at q tabulates f |-> omega_element(a, q, f).  Definability evidence is
// recorded as deferred; naturality is checkable, not assumed.
Approximant omega_approximant(const Type& a, int k, const Config& cfg = {});

// omega power of a Church-typed family: component at q maps (letters, c)
// to the idempotent power of theta_q(letters) applied to c
Approximant word_omega(const Approximant& theta, const Config& cfg = {});

// equality of interpretations at level q (a congruence on closed terms)
bool congruent(int q, const Term& m, const Term& n, const Config& cfg = {});

// least q <= max_q whose interpretations differ, if any
std::optional<int> separate(const Term& m, const Term& n, int max_q,
                            const Config& cfg = {});

}  // namespace prolam
