#pragma once

// The standard finite model: the base type denotes [q] = {0..q-1} and
// arrows denote full function spaces.  Every element of a denotation is
// identified with an exact natural number:
//
//   base:     the element itself
//   A => B:   sum over x of table[x] * size(B)^x   (little-endian mixed radix)
//   A *  B:   i_A + size(A) * i_B
//   1:        0
//
// Sizes grow doubly exponentially, so they are computed lazily and
// exactly (arbitrary precision), and anything that would lay out a
// function table longer than the configured cap refuses with cap_error.

#include "prolam/syntax.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>

namespace prolam {

using Nat = boost::multiprecision::cpp_int;

struct Config {
  std::int64_t table_cap = 1 << 20;  // max entries one table may materialize
  int term_budget = 14;              // enumeration budget (node count)
  int cutoff = 3;                    // default approximant truncation
  std::uint64_t seed = 0;            // sampling seed
  int samples = 512;                 // relation samples per level pair
};

// descriptor of the denotation of a type at a given base cardinality;
// construction never fails, size queries are guarded
struct Den {
  Type type;
  int q = 0;

  Nat size() const;                       // exact; cap_error if astronomical
  bool size_fits(std::int64_t cap) const; // true iff size() <= cap
  bool operator==(const Den& o) const { return q == o.q && type == o.type; }
  bool operator!=(const Den& o) const { return !(*this == o); }
};

// exact denotation size of a type at base cardinality q (memoized)
Nat den_size(const Type& t, int q);

class Element {
public:
  Element(Den den, Nat index);  // validates 0 <= index < den.size()

  const Den& den() const { return den_; }
  const Type& type() const { return den_.type; }
  int q() const { return den_.q; }
  const Nat& index() const { return index_; }

  // function-table view at arrow type: entry x is the index of the result
  // of applying this element to x
  std::vector<Nat> table(const Config& cfg = {}) const;

  bool operator==(const Element& o) const {
    return den_ == o.den_ && index_ == o.index_;
  }
  bool operator!=(const Element& o) const { return !(*this == o); }

  static Element trusted(Den den, Nat index);  // no range check (internal)

private:
  Element() = default;
  Den den_{Type::base(), 0};
  Nat index_;
};

// element of the base denotation [q]
Element base_element(int q, std::int64_t value);

// function application by digit extraction; g must be at an arrow type and
// x at its argument type over the same q
Element apply(const Element& g, const Element& x);

// builds the element of `arrow_den` whose table is fn(x) for each x of the
// argument denotation; refuses if the argument denotation exceeds the cap
Element tabulate(const Den& arrow_den,
                 const std::function<Element(const Element&)>& fn,
                 const Config& cfg = {});

// compositional interpretation of a well-typed term; env supplies one
// element per context entry, in context order
Element interpret(const Term& t, int q, const std::vector<Element>& env = {},
                  const Context& ctx = {}, const Config& cfg = {});

// x |-> g(f(x)) : A => C  for f : A => B and g : B => C
Element compose_elements(const Element& f, const Element& g,
                         const Config& cfg = {});

// endofunctions of [q] as indices in [q^q]: decode to / encode from the
// value table (entry x = image of x)
std::vector<std::int64_t> endo_table(std::int64_t index, int q);
std::int64_t endo_index(const std::vector<std::int64_t>& table, int q);
// the same encoding as an element of den(o->o, q); exact even where q^q
// overflows machine words
Element endo_element(const std::vector<std::int64_t>& table, int q);

// table of the composite f_{w_k} . ... . f_{w_1} (first letter applied
// first); letters index into letter_tables, tables are endofunctions of [q]
std::vector<std::int64_t> word_action(
    int q, const std::vector<std::vector<std::int64_t>>& letter_tables,
    const std::vector<int>& word);

// the element of den(church(n), q) interpreting the Church encoding of a
// word over an n-letter alphabet: the functional sending each tuple of
// endofunctions (f_1,...,f_n) to f_{w_k} . ... . f_{w_1}.  Computed
// digit-by-digit, so it works at denotations far beyond the table cap; the
// per-tuple state (q^q)^n must stay within the cap.
Element word_element(int alphabet_size, const std::vector<int>& word, int q,
                     const Config& cfg = {});

}  // namespace prolam
