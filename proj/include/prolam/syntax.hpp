#pragma once

// Simply typed lambda-calculus over a single base type `o`, with finite
// products.  Terms are nameless (de Bruijn indices); binders carry their
// argument type, so typechecking is syntax-directed and total.  The
// canonical form produced by normalize() is beta-normal and eta-long at
// every type, which makes syntactic equality coincide with beta-eta
// equivalence.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace prolam {

//// errors ///////////////////////////////////////////////////////////////

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// lexical or grammatical problem in source text; carries a 1-based position
struct parse_error : error {
  parse_error(const std::string& what, int line, int col)
      : error(what + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line), col(col) {}
  int line, col;
};

struct type_error : error {
  using error::error;
};

// raised when an operation would materialize more than the configured
// number of table entries, or a denotation size too large to represent
struct cap_error : error {
  using error::error;
};

// internal invariant violation (a bug, not a user error)
struct invariant_error : error {
  using error::error;
};

//// types ////////////////////////////////////////////////////////////////

class Type {
public:
  struct Node;
  enum class Tag { Base, Arrow, Product, Unit };

  static Type base();
  static Type arrow(Type a, Type b);
  static Type product(Type a, Type b);
  static Type unit();

  Tag tag() const;
  const Type& left() const;   // argument / first component
  const Type& right() const;  // result / second component

  bool operator==(const Type& o) const;
  bool operator!=(const Type& o) const { return !(*this == o); }

private:
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// tree height: depth(o) = depth(1) = 0, depth(A=>B) = 1 + max of the parts
int type_depth(const Type& t);

std::string to_string(const Type& t);
Type parse_type(const std::string& src);

//// terms ////////////////////////////////////////////////////////////////

class Term {
public:
  struct Node;
  enum class Tag { Var, Lam, App, Pair, Fst, Snd, Unit };

  static Term var(int index);
  static Term lam(Type arg, Term body);
  static Term app(Term fn, Term arg);
  static Term pair(Term a, Term b);
  static Term fst(Term t);
  static Term snd(Term t);
  static Term unit();

  Tag tag() const;
  int index() const;          // Var
  const Type& arg_type() const;  // Lam
  const Term& body() const;   // Lam
  const Term& fn() const;     // App
  const Term& arg() const;    // App
  const Term& first() const;  // Pair
  const Term& second() const; // Pair
  const Term& sub() const;    // Fst / Snd

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }

private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// node count: var and unit are 1; every other constructor adds 1
int term_size(const Term& t);

// Typing context, outermost binder first: the LAST entry is de Bruijn
// index 0.  interpret()'s environment uses the same order.
using Context = std::vector<Type>;

// named context entry for concrete syntax ("y" : o)
using NamedContext = std::vector<std::pair<std::string, Type>>;

// Concrete syntax:  \x:T. body   application by juxtaposition (left-assoc)
//   types:  o,  1,  A -> B (right-assoc),  A * B (binds tighter than ->)
//   pairs (M, N), projections `fst M` / `snd M`, unit value ()
Term parse_term(const std::string& src, const NamedContext& ctx = {});

// deterministic printer; binders are named x0, x1, ... by depth
std::string to_string(const Term& t);

Type typecheck(const Term& t, const Context& ctx = {});

// capture-avoiding machinery on nameless terms
Term shift(const Term& t, int by, int cutoff = 0);
Term substitute(const Term& t, int var, const Term& replacement);

// beta-normal form (normal-order reduction; total on well-typed terms)
Term beta_normalize(const Term& t);

// canonical beta-normal eta-long form
Term normalize(const Term& t, const Context& ctx = {});

//// the Church encoding of words /////////////////////////////////////////

using Alphabet = std::vector<std::string>;

// (o=>o) => ... => (o=>o) => o => o   with one arrow-of-(o=>o) per letter
Type church_type(int alphabet_size);

// w = w1...wk  becomes  \a1...\an.\c. a_{wk} (... (a_{w1} c))   -- the first
// letter is applied innermost, so semantic evaluation folds left to right
Term church_term(const Alphabet& alphabet, const std::vector<int>& word);
Term church_term(const Alphabet& alphabet, const std::string& word);

// inverse: reads the word off a closed term of the Church type; every
// closed normal inhabitant of the type has this shape
std::vector<int> word_of_church(const Term& t, const Alphabet& alphabet);

// maps each character of `word` to its letter index; letters must be
// single characters for this helper
std::vector<int> word_indices(const Alphabet& alphabet, const std::string& word);
std::string word_string(const Alphabet& alphabet, const std::vector<int>& word);

}  // namespace prolam
