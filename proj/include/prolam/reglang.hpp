#pragma once

// Regular languages of closed terms at a fixed type: a language is the set
// of terms whose interpretation at level q lands in an accepting set of the
// denotation.  Accepting sets are kept as expression trees (explicit index
// sets, evaluation preimages, preimages under lifted partial surjections,
// and boolean combinations) so that languages over denotations far beyond
// the materialization cap still answer membership queries.

#include "prolam/definability.hpp"
#include "prolam/relations.hpp"

#include <memory>
#include <set>
#include <vector>

namespace prolam {

class RegLanguage {
 public:
  static RegLanguage empty(const Type& type, int q);
  static RegLanguage everything(const Type& type, int q);
  static RegLanguage of_indices(const Type& type, int q,
                                std::vector<Nat> accepting);
  static RegLanguage atom(const Type& type, int q, const Element& x);
  // terms of the Church type of `letters` whose evaluation at the letter
  // functions, applied to the start value, lands in `finals`
  static RegLanguage eval_preimage(std::vector<Element> letters,
                                   std::int64_t start,
                                   std::set<std::int64_t> finals);
  // preimage of `inner` under the lifted partial surjection of `f`; the
  // resulting language lives at level f.lhs and has the same members
  static RegLanguage psurj_preimage(const PartialSurjection& f,
                                    RegLanguage inner);

  const Type& type() const { return type_; }
  int q() const { return q_; }

  // does the element (at den(type, q)) lie in the accepting set
  bool accepts(const Element& x, const Config& cfg = {}) const;
  // does the closed term belong to the language
  bool member(const Term& m, const Config& cfg = {}) const;

  // the accepted subset of a definable set at the same type and level
  std::vector<Nat> normalized_atoms(const DefSet& defs,
                                    const Config& cfg = {}) const;

  // inclusion into a level q_to >= q along the canonical partial
  // surjection (identity below q, undefined above); same members
  RegLanguage embed(int q_to, const Config& cfg = {}) const;

  struct Node;  // accepting-set expression node (definition internal)

 private:
  RegLanguage(Type type, int q, std::shared_ptr<const Node> root);
  Type type_;
  int q_;
  std::shared_ptr<const Node> root_;

  friend RegLanguage lang_union(const RegLanguage&, const RegLanguage&);
  friend RegLanguage lang_inter(const RegLanguage&, const RegLanguage&);
  friend RegLanguage lang_complement(const RegLanguage&);
  friend RegLanguage intersect_across(const RegLanguage&, const RegLanguage&,
                                      const Config&);
};

RegLanguage lang_union(const RegLanguage& a, const RegLanguage& b);
RegLanguage lang_inter(const RegLanguage& a, const RegLanguage& b);
RegLanguage lang_complement(const RegLanguage& a);

// meet of languages recognized at different levels: both are pulled back
// along the coproduct partial surjections [q1+q2] ->> [q1], [q1+q2] ->> [q2]
// and intersected at level q1+q2
RegLanguage intersect_across(const RegLanguage& a, const RegLanguage& b,
                             const Config& cfg = {});

// the two canonical coproduct projections for intersect_across
PartialSurjection coproduct_first(int q1, int q2);
PartialSurjection coproduct_second(int q1, int q2);

struct LangEquality {
  bool equal_on_definables = false;
  bool certified = false;  // definable sets at the common level were exact
};

// decides whether two languages (possibly at different levels) contain the
// same terms, by comparing accepted definables at the common larger level
LangEquality same_language(const RegLanguage& a, const RegLanguage& b,
                           const Config& cfg = {});

}  // namespace prolam
