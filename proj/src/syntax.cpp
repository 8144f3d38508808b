#include "prolam/syntax.hpp"

#include <cctype>
#include <sstream>

namespace prolam {

//// type nodes ///////////////////////////////////////////////////////////

struct Type::Node {
  Tag tag;
  std::optional<Type> left, right;
};

namespace {
const std::shared_ptr<const Type::Node>& base_node() {
  static const auto n = std::make_shared<const Type::Node>(
      Type::Node{Type::Tag::Base, {}, {}});
  return n;
}
const std::shared_ptr<const Type::Node>& unit_node() {
  static const auto n = std::make_shared<const Type::Node>(
      Type::Node{Type::Tag::Unit, {}, {}});
  return n;
}
}  // namespace

Type Type::base() { return Type(base_node()); }
Type Type::unit() { return Type(unit_node()); }
Type Type::arrow(Type a, Type b) {
  return Type(std::make_shared<const Node>(
      Node{Tag::Arrow, std::move(a), std::move(b)}));
}
Type Type::product(Type a, Type b) {
  return Type(std::make_shared<const Node>(
      Node{Tag::Product, std::move(a), std::move(b)}));
}

Type::Tag Type::tag() const { return node_->tag; }
const Type& Type::left() const { return *node_->left; }
const Type& Type::right() const { return *node_->right; }

bool Type::operator==(const Type& o) const {
  if (node_ == o.node_) return true;
  if (node_->tag != o.node_->tag) return false;
  switch (node_->tag) {
    case Tag::Base:
    case Tag::Unit: return true;
    default: return left() == o.left() && right() == o.right();
  }
}

int type_depth(const Type& t) {
  switch (t.tag()) {
    case Type::Tag::Base:
    case Type::Tag::Unit: return 0;
    default: return 1 + std::max(type_depth(t.left()), type_depth(t.right()));
  }
}

namespace {
// arrows are right-associative and bind loosest; '*' binds tighter
void print_type(std::ostream& out, const Type& t, bool arrow_left, bool prod_arg) {
  switch (t.tag()) {
    case Type::Tag::Base: out << "o"; return;
    case Type::Tag::Unit: out << "1"; return;
    case Type::Tag::Arrow: {
      bool paren = arrow_left || prod_arg;
      if (paren) out << "(";
      print_type(out, t.left(), /*arrow_left=*/true, false);
      out << "->";
      print_type(out, t.right(), false, false);
      if (paren) out << ")";
      return;
    }
    case Type::Tag::Product: {
      // left-associative: only right children that are themselves
      // products need parens
      if (prod_arg) out << "(";
      print_type(out, t.left(), /*arrow_left=*/true, false);
      out << "*";
      print_type(out, t.right(), true, true);
      if (prod_arg) out << ")";
      return;
    }
  }
}
}  // namespace

std::string to_string(const Type& t) {
  std::ostringstream out;
  print_type(out, t, false, false);
  return out.str();
}

//// term nodes ///////////////////////////////////////////////////////////

struct Term::Node {
  Tag tag;
  int index = 0;             // Var
  std::optional<Type> type;  // Lam argument type
  std::optional<Term> a, b;  // children
};

Term Term::var(int index) {
  return Term(std::make_shared<const Node>(Node{Tag::Var, index, {}, {}, {}}));
}
Term Term::lam(Type arg, Term body) {
  return Term(std::make_shared<const Node>(
      Node{Tag::Lam, 0, std::move(arg), std::move(body), {}}));
}
Term Term::app(Term fn, Term arg) {
  return Term(std::make_shared<const Node>(
      Node{Tag::App, 0, {}, std::move(fn), std::move(arg)}));
}
Term Term::pair(Term a, Term b) {
  return Term(std::make_shared<const Node>(
      Node{Tag::Pair, 0, {}, std::move(a), std::move(b)}));
}
Term Term::fst(Term t) {
  return Term(std::make_shared<const Node>(Node{Tag::Fst, 0, {}, std::move(t), {}}));
}
Term Term::snd(Term t) {
  return Term(std::make_shared<const Node>(Node{Tag::Snd, 0, {}, std::move(t), {}}));
}
Term Term::unit() {
  static const auto n = std::make_shared<const Node>(Node{Tag::Unit, 0, {}, {}, {}});
  return Term(n);
}

Term::Tag Term::tag() const { return node_->tag; }
int Term::index() const { return node_->index; }
const Type& Term::arg_type() const { return *node_->type; }
const Term& Term::body() const { return *node_->a; }
const Term& Term::fn() const { return *node_->a; }
const Term& Term::arg() const { return *node_->b; }
const Term& Term::first() const { return *node_->a; }
const Term& Term::second() const { return *node_->b; }
const Term& Term::sub() const { return *node_->a; }

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (node_->tag != o.node_->tag) return false;
  switch (node_->tag) {
    case Tag::Var: return node_->index == o.node_->index;
    case Tag::Unit: return true;
    case Tag::Lam:
      return arg_type() == o.arg_type() && body() == o.body();
    case Tag::App:
    case Tag::Pair:
      return first() == o.first() && second() == o.second();
    case Tag::Fst:
    case Tag::Snd:
      return sub() == o.sub();
  }
  return false;
}

int term_size(const Term& t) {
  switch (t.tag()) {
    case Term::Tag::Var:
    case Term::Tag::Unit: return 1;
    case Term::Tag::Lam: return 1 + term_size(t.body());
    case Term::Tag::Fst:
    case Term::Tag::Snd: return 1 + term_size(t.sub());
    case Term::Tag::App:
    case Term::Tag::Pair:
      return 1 + term_size(t.first()) + term_size(t.second());
  }
  return 0;
}

//// lexer ////////////////////////////////////////////////////////////////

namespace {

enum class Tok { Lambda, Ident, Colon, Dot, Arrow, Star, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

struct Lexer {
  std::vector<Token> tokens;
  std::size_t pos = 0;

  explicit Lexer(const std::string& src) {
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string t) {
      tokens.push_back({k, std::move(t), line, col});
    };
    while (i < src.size()) {
      char c = src[i];
      if (c == '\n') { ++line; col = 1; ++i; continue; }
      if (std::isspace(static_cast<unsigned char>(c))) { ++col; ++i; continue; }
      if (c == '\\') { push(Tok::Lambda, "\\"); ++i; ++col; continue; }
      if (c == ':') { push(Tok::Colon, ":"); ++i; ++col; continue; }
      if (c == '.') { push(Tok::Dot, "."); ++i; ++col; continue; }
      if (c == '*') { push(Tok::Star, "*"); ++i; ++col; continue; }
      if (c == '(') { push(Tok::LParen, "("); ++i; ++col; continue; }
      if (c == ')') { push(Tok::RParen, ")"); ++i; ++col; continue; }
      if (c == ',') { push(Tok::Comma, ","); ++i; ++col; continue; }
      if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
        push(Tok::Arrow, "->"); i += 2; col += 2; continue;
      }
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[j])) ||
                src[j] == '_' || src[j] == '\'')) ++j;
        push(Tok::Ident, src.substr(i, j - i));
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      throw parse_error(std::string("unexpected character '") + c + "'", line, col);
    }
    tokens.push_back({Tok::End, "", line, col});
  }

  const Token& peek() const { return tokens[pos]; }
  Token next() { return tokens[pos++]; }
  Token expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw parse_error(std::string("expected ") + what + ", found '" +
                            (peek().kind == Tok::End ? "end of input" : peek().text) + "'",
                        peek().line, peek().col);
    return next();
  }
};

//// type parser //////////////////////////////////////////////////////////

Type parse_type_expr(Lexer& lx);

Type parse_type_atom(Lexer& lx) {
  const Token& t = lx.peek();
  if (t.kind == Tok::Ident && t.text == "o") { lx.next(); return Type::base(); }
  if (t.kind == Tok::Ident && t.text == "1") { lx.next(); return Type::unit(); }
  if (t.kind == Tok::LParen) {
    lx.next();
    Type inner = parse_type_expr(lx);
    lx.expect(Tok::RParen, "')'");
    return inner;
  }
  throw parse_error("expected a type, found '" +
                        (t.kind == Tok::End ? "end of input" : t.text) + "'",
                    t.line, t.col);
}

Type parse_type_product(Lexer& lx) {
  Type acc = parse_type_atom(lx);
  while (lx.peek().kind == Tok::Star) {
    lx.next();
    acc = Type::product(acc, parse_type_atom(lx));
  }
  return acc;
}

Type parse_type_expr(Lexer& lx) {
  Type left = parse_type_product(lx);
  if (lx.peek().kind == Tok::Arrow) {
    lx.next();
    return Type::arrow(left, parse_type_expr(lx));
  }
  return left;
}

//// term parser //////////////////////////////////////////////////////////

struct TermParser {
  Lexer& lx;
  const NamedContext& ctx;
  std::vector<std::string> binders;  // innermost last

  Term resolve(const Token& name) {
    for (int i = static_cast<int>(binders.size()) - 1; i >= 0; --i)
      if (binders[i] == name.text)
        return Term::var(static_cast<int>(binders.size()) - 1 - i);
    for (int j = static_cast<int>(ctx.size()) - 1; j >= 0; --j)
      if (ctx[j].first == name.text)
        return Term::var(static_cast<int>(binders.size()) +
                         static_cast<int>(ctx.size()) - 1 - j);
    throw parse_error("unbound variable '" + name.text + "'", name.line, name.col);
  }

  bool starts_atom(const Token& t) const {
    return t.kind == Tok::LParen ||
           (t.kind == Tok::Ident);
  }

  Term parse_atom() {
    const Token t = lx.peek();
    if (t.kind == Tok::Ident && (t.text == "fst" || t.text == "snd")) {
      lx.next();
      Term inner = parse_atom();
      return t.text == "fst" ? Term::fst(inner) : Term::snd(inner);
    }
    if (t.kind == Tok::Ident) {
      lx.next();
      return resolve(t);
    }
    if (t.kind == Tok::LParen) {
      lx.next();
      if (lx.peek().kind == Tok::RParen) { lx.next(); return Term::unit(); }
      Term first = parse_term_expr();
      if (lx.peek().kind == Tok::Comma) {
        lx.next();
        Term second = parse_term_expr();
        lx.expect(Tok::RParen, "')'");
        return Term::pair(first, second);
      }
      lx.expect(Tok::RParen, "')'");
      return first;
    }
    throw parse_error("expected a term, found '" +
                          (t.kind == Tok::End ? "end of input" : t.text) + "'",
                      t.line, t.col);
  }

  Term parse_term_expr() {
    if (lx.peek().kind == Tok::Lambda) {
      lx.next();
      Token name = lx.expect(Tok::Ident, "a binder name");
      if (name.text == "fst" || name.text == "snd")
        throw parse_error("'" + name.text + "' is reserved", name.line, name.col);
      lx.expect(Tok::Colon, "':'");
      Type ty = parse_type_expr(lx);
      lx.expect(Tok::Dot, "'.'");
      binders.push_back(name.text);
      Term body = parse_term_expr();
      binders.pop_back();
      return Term::lam(std::move(ty), std::move(body));
    }
    Term acc = parse_atom();
    while (starts_atom(lx.peek()))
      acc = Term::app(std::move(acc), parse_atom());
    return acc;
  }
};

}  // namespace

Type parse_type(const std::string& src) {
  Lexer lx(src);
  Type t = parse_type_expr(lx);
  if (lx.peek().kind != Tok::End)
    throw parse_error("trailing input '" + lx.peek().text + "'",
                      lx.peek().line, lx.peek().col);
  return t;
}

Term parse_term(const std::string& src, const NamedContext& ctx) {
  Lexer lx(src);
  TermParser p{lx, ctx, {}};
  Term t = p.parse_term_expr();
  if (lx.peek().kind != Tok::End)
    throw parse_error("trailing input '" + lx.peek().text + "'",
                      lx.peek().line, lx.peek().col);
  return t;
}

//// printer //////////////////////////////////////////////////////////////

namespace {
void print_term(std::ostream& out, const Term& t, int depth, int prec) {
  // prec 0 = anywhere, 1 = application child, 2 = application argument-only
  switch (t.tag()) {
    case Term::Tag::Var:
      // bound variables are named by binder depth; free ones by their
      // position in the ambient context (outermost = y0)
      if (t.index() < depth)
        out << "x" << (depth - 1 - t.index());
      else
        out << "y" << (t.index() - depth);
      return;
    case Term::Tag::Unit:
      out << "()";
      return;
    case Term::Tag::Lam: {
      if (prec > 0) out << "(";
      out << "\\x" << depth << ":" << to_string(t.arg_type()) << ". ";
      print_term(out, t.body(), depth + 1, 0);
      if (prec > 0) out << ")";
      return;
    }
    case Term::Tag::App: {
      if (prec > 1) out << "(";
      print_term(out, t.fn(), depth, 1);
      out << " ";
      print_term(out, t.arg(), depth, 2);
      if (prec > 1) out << ")";
      return;
    }
    case Term::Tag::Pair: {
      out << "(";
      print_term(out, t.first(), depth, 0);
      out << ", ";
      print_term(out, t.second(), depth, 0);
      out << ")";
      return;
    }
    case Term::Tag::Fst:
    case Term::Tag::Snd: {
      if (prec > 1) out << "(";
      out << (t.tag() == Term::Tag::Fst ? "fst " : "snd ");
      print_term(out, t.sub(), depth, 2);
      if (prec > 1) out << ")";
      return;
    }
  }
}
}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream out;
  print_term(out, t, 0, 0);
  return out.str();
}

//// typechecking /////////////////////////////////////////////////////////

Type typecheck(const Term& t, const Context& ctx) {
  switch (t.tag()) {
    case Term::Tag::Var: {
      int i = t.index();
      if (i < 0 || i >= static_cast<int>(ctx.size()))
        throw type_error("unbound de Bruijn index " + std::to_string(i) +
                         " in context of size " + std::to_string(ctx.size()));
      return ctx[ctx.size() - 1 - i];
    }
    case Term::Tag::Unit:
      return Type::unit();
    case Term::Tag::Lam: {
      Context inner = ctx;
      inner.push_back(t.arg_type());
      return Type::arrow(t.arg_type(), typecheck(t.body(), inner));
    }
    case Term::Tag::App: {
      Type f = typecheck(t.fn(), ctx);
      Type a = typecheck(t.arg(), ctx);
      if (f.tag() != Type::Tag::Arrow)
        throw type_error("applied a non-function: " + to_string(t.fn()) +
                         " : " + to_string(f));
      if (f.left() != a)
        throw type_error("argument type mismatch in " + to_string(t) + ": expected " +
                         to_string(f.left()) + ", got " + to_string(a));
      return f.right();
    }
    case Term::Tag::Pair:
      return Type::product(typecheck(t.first(), ctx), typecheck(t.second(), ctx));
    case Term::Tag::Fst:
    case Term::Tag::Snd: {
      Type p = typecheck(t.sub(), ctx);
      if (p.tag() != Type::Tag::Product)
        throw type_error("projection from a non-pair: " + to_string(t.sub()) +
                         " : " + to_string(p));
      return t.tag() == Term::Tag::Fst ? p.left() : p.right();
    }
  }
  throw invariant_error("unreachable term tag");
}

//// substitution and normalization ///////////////////////////////////////

Term shift(const Term& t, int by, int cutoff) {
  switch (t.tag()) {
    case Term::Tag::Var: {
      int i = t.index();
      if (i < cutoff) return t;
      if (i + by < cutoff)
        throw invariant_error("negative index after shift");
      return Term::var(i + by);
    }
    case Term::Tag::Unit: return t;
    case Term::Tag::Lam:
      return Term::lam(t.arg_type(), shift(t.body(), by, cutoff + 1));
    case Term::Tag::App:
      return Term::app(shift(t.fn(), by, cutoff), shift(t.arg(), by, cutoff));
    case Term::Tag::Pair:
      return Term::pair(shift(t.first(), by, cutoff), shift(t.second(), by, cutoff));
    case Term::Tag::Fst: return Term::fst(shift(t.sub(), by, cutoff));
    case Term::Tag::Snd: return Term::snd(shift(t.sub(), by, cutoff));
  }
  throw invariant_error("unreachable term tag");
}

Term substitute(const Term& t, int var, const Term& replacement) {
  switch (t.tag()) {
    case Term::Tag::Var:
      if (t.index() == var) return replacement;
      return t;
    case Term::Tag::Unit: return t;
    case Term::Tag::Lam:
      return Term::lam(t.arg_type(),
                       substitute(t.body(), var + 1, shift(replacement, 1)));
    case Term::Tag::App:
      return Term::app(substitute(t.fn(), var, replacement),
                       substitute(t.arg(), var, replacement));
    case Term::Tag::Pair:
      return Term::pair(substitute(t.first(), var, replacement),
                        substitute(t.second(), var, replacement));
    case Term::Tag::Fst: return Term::fst(substitute(t.sub(), var, replacement));
    case Term::Tag::Snd: return Term::snd(substitute(t.sub(), var, replacement));
  }
  throw invariant_error("unreachable term tag");
}

namespace {
// (\:A. body) arg  -->  body[0 := arg], with index bookkeeping
Term beta_contract(const Term& body, const Term& arg) {
  return shift(substitute(body, 0, shift(arg, 1)), -1);
}
}  // namespace

Term beta_normalize(const Term& t) {
  switch (t.tag()) {
    case Term::Tag::Var:
    case Term::Tag::Unit: return t;
    case Term::Tag::Lam:
      return Term::lam(t.arg_type(), beta_normalize(t.body()));
    case Term::Tag::App: {
      Term f = beta_normalize(t.fn());
      if (f.tag() == Term::Tag::Lam)
        return beta_normalize(beta_contract(f.body(), t.arg()));
      return Term::app(std::move(f), beta_normalize(t.arg()));
    }
    case Term::Tag::Pair:
      return Term::pair(beta_normalize(t.first()), beta_normalize(t.second()));
    case Term::Tag::Fst: {
      Term p = beta_normalize(t.sub());
      if (p.tag() == Term::Tag::Pair) return p.first();
      return Term::fst(std::move(p));
    }
    case Term::Tag::Snd: {
      Term p = beta_normalize(t.sub());
      if (p.tag() == Term::Tag::Pair) return p.second();
      return Term::snd(std::move(p));
    }
  }
  throw invariant_error("unreachable term tag");
}

namespace {

Term eta_long(const Context& ctx, const Term& t, const Type& ty);

// t is a beta-normal neutral term (variable head followed by eliminations);
// eta-expand its application arguments in place
Term eta_spine(const Context& ctx, const Term& t) {
  switch (t.tag()) {
    case Term::Tag::Var: return t;
    case Term::Tag::App: {
      Type fty = typecheck(t.fn(), ctx);
      return Term::app(eta_spine(ctx, t.fn()),
                       eta_long(ctx, t.arg(), fty.left()));
    }
    case Term::Tag::Fst: return Term::fst(eta_spine(ctx, t.sub()));
    case Term::Tag::Snd: return Term::snd(eta_spine(ctx, t.sub()));
    default:
      throw invariant_error("eta_spine on a non-neutral term: " + to_string(t));
  }
}

Term eta_long(const Context& ctx, const Term& t, const Type& ty) {
  switch (ty.tag()) {
    case Type::Tag::Arrow: {
      Context inner = ctx;
      inner.push_back(ty.left());
      if (t.tag() == Term::Tag::Lam)
        return Term::lam(ty.left(), eta_long(inner, t.body(), ty.right()));
      return Term::lam(ty.left(),
                       eta_long(inner, Term::app(shift(t, 1), Term::var(0)),
                                ty.right()));
    }
    case Type::Tag::Product: {
      if (t.tag() == Term::Tag::Pair)
        return Term::pair(eta_long(ctx, t.first(), ty.left()),
                          eta_long(ctx, t.second(), ty.right()));
      return Term::pair(eta_long(ctx, Term::fst(t), ty.left()),
                        eta_long(ctx, Term::snd(t), ty.right()));
    }
    case Type::Tag::Unit:
      return Term::unit();
    case Type::Tag::Base:
      return eta_spine(ctx, t);
  }
  throw invariant_error("unreachable type tag");
}

}  // namespace

Term normalize(const Term& t, const Context& ctx) {
  Type ty = typecheck(t, ctx);
  return eta_long(ctx, beta_normalize(t), ty);
}

//// Church encoding //////////////////////////////////////////////////////

Type church_type(int alphabet_size) {
  Type oo = Type::arrow(Type::base(), Type::base());
  Type acc = oo;
  for (int i = 0; i < alphabet_size; ++i) acc = Type::arrow(oo, acc);
  return acc;
}

Term church_term(const Alphabet& alphabet, const std::vector<int>& word) {
  int n = static_cast<int>(alphabet.size());
  Term body = Term::var(0);  // the continuation c
  for (int letter : word) {
    if (letter < 0 || letter >= n)
      throw error("letter index " + std::to_string(letter) +
                  " outside alphabet of size " + std::to_string(n));
    body = Term::app(Term::var(n - letter), body);
  }
  Term t = Term::lam(Type::base(), std::move(body));
  Type oo = Type::arrow(Type::base(), Type::base());
  for (int i = 0; i < n; ++i) t = Term::lam(oo, std::move(t));
  return t;
}

Term church_term(const Alphabet& alphabet, const std::string& word) {
  return church_term(alphabet, word_indices(alphabet, word));
}

std::vector<int> word_of_church(const Term& t, const Alphabet& alphabet) {
  int n = static_cast<int>(alphabet.size());
  if (typecheck(t) != church_type(n))
    throw type_error("term does not have the Church type for " +
                     std::to_string(n) + " letters");
  Term nf = normalize(t);
  for (int i = 0; i < n + 1; ++i) {
    if (nf.tag() != Term::Tag::Lam)
      throw invariant_error("normal form of a Church-typed term lacks a binder");
    nf = nf.body();
  }
  std::vector<int> reversed;
  while (nf.tag() == Term::Tag::App) {
    const Term& head = nf.fn();
    if (head.tag() != Term::Tag::Var || head.index() < 1 || head.index() > n)
      throw invariant_error("unexpected head in Church normal form: " +
                            to_string(head));
    reversed.push_back(n - head.index());
    nf = nf.arg();
  }
  if (nf.tag() != Term::Tag::Var || nf.index() != 0)
    throw invariant_error("Church normal form does not end at the continuation");
  return {reversed.rbegin(), reversed.rend()};
}

std::vector<int> word_indices(const Alphabet& alphabet, const std::string& word) {
  std::vector<int> out;
  out.reserve(word.size());
  for (char c : word) {
    int found = -1;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i].size() == 1 && alphabet[i][0] == c)
        found = static_cast<int>(i);
    if (found < 0)
      throw error(std::string("letter '") + c + "' not in alphabet");
    out.push_back(found);
  }
  return out;
}

std::string word_string(const Alphabet& alphabet, const std::vector<int>& word) {
  std::string out;
  for (int l : word) {
    if (l < 0 || l >= static_cast<int>(alphabet.size()))
      throw error("letter index out of range");
    out += alphabet[l];
  }
  return out;
}

}  // namespace prolam
