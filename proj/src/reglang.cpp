#include "prolam/reglang.hpp"

#include <algorithm>

namespace prolam {

struct RegLanguage::Node {
  enum class Kind { Explicit, EvalPreimage, PsurjPreimage, Union, Inter, Complement };
  Kind kind;
  // Explicit
  std::vector<Nat> accepting;  // sorted
  // EvalPreimage
  std::vector<Element> letters;
  std::int64_t start = 0;
  std::set<std::int64_t> finals;
  // PsurjPreimage: base-level map [q] ->> [inner q'] and the inner language
  PartialSurjection psurj{0, 0, {}};
  std::shared_ptr<const Node> inner;
  int inner_q = 0;
  // Union / Inter / Complement
  std::shared_ptr<const Node> left, right;
};

namespace {

using Node = RegLanguage::Node;

bool node_accepts(const Node& n, const Type& type, int q, const Element& x,
                  const Config& cfg);

// image of x under the lifted partial surjection of f, if defined; found
// either through the materialized lift or, beyond the cap, by searching the
// lower denotation with the membership quantifier
std::optional<Element> lifted_image(const Type& type, int q,
                                    const PartialSurjection& f,
                                    const Element& x, const Config& cfg) {
  Den hi{type, q}, lo{type, static_cast<int>(f.rhs)};
  if (hi.size_fits(cfg.table_cap) && lo.size_fits(cfg.table_cap)) {
    PartialSurjection lifted = logical_relation_of_psurj(type, f, cfg);
    auto idx = x.index().convert_to<std::int64_t>();
    if (!lifted.defined(idx)) return std::nullopt;
    return Element(lo, lifted.at(idx));
  }
  if (!lo.size_fits(cfg.table_cap))
    throw cap_error("cannot search den(" + to_string(type) + ", " +
                    std::to_string(f.rhs) + ") beyond the cap");
  LogicalRelation lr(f.graph(), cfg);
  Nat lo_size = lo.size();
  for (Nat y = 0; y < lo_size; ++y)
    if (lr.member_index(type, x.index(), y)) return Element(lo, y);
  return std::nullopt;
}

bool node_accepts(const Node& n, const Type& type, int q, const Element& x,
                  const Config& cfg) {
  switch (n.kind) {
    case Node::Kind::Explicit:
      return std::binary_search(n.accepting.begin(), n.accepting.end(),
                                x.index());
    case Node::Kind::EvalPreimage: {
      Element cur = x;
      for (const Element& f : n.letters) cur = apply(cur, f);
      Element out = apply(cur, base_element(q, n.start));
      return n.finals.count(out.index().convert_to<std::int64_t>()) > 0;
    }
    case Node::Kind::PsurjPreimage: {
      auto y = lifted_image(type, q, n.psurj, x, cfg);
      return y && node_accepts(*n.inner, type, n.inner_q, *y, cfg);
    }
    case Node::Kind::Union:
      return node_accepts(*n.left, type, q, x, cfg) ||
             node_accepts(*n.right, type, q, x, cfg);
    case Node::Kind::Inter:
      return node_accepts(*n.left, type, q, x, cfg) &&
             node_accepts(*n.right, type, q, x, cfg);
    case Node::Kind::Complement:
      return !node_accepts(*n.left, type, q, x, cfg);
  }
  throw invariant_error("unreachable node kind");
}

std::shared_ptr<const Node> make_node(Node n) {
  return std::make_shared<const Node>(std::move(n));
}

}  // namespace

RegLanguage::RegLanguage(Type type, int q, std::shared_ptr<const Node> root)
    : type_(std::move(type)), q_(q), root_(std::move(root)) {}

RegLanguage RegLanguage::empty(const Type& type, int q) {
  return of_indices(type, q, {});
}

RegLanguage RegLanguage::everything(const Type& type, int q) {
  return lang_complement(empty(type, q));
}

RegLanguage RegLanguage::of_indices(const Type& type, int q,
                                    std::vector<Nat> accepting) {
  if (q < 0) throw error("language level must be >= 0");
  std::sort(accepting.begin(), accepting.end());
  accepting.erase(std::unique(accepting.begin(), accepting.end()),
                  accepting.end());
  Nat size = Den{type, q}.size();
  for (const Nat& a : accepting)
    if (a < 0 || a >= size)
      throw error("accepting index " + a.str() + " outside den(" +
                  to_string(type) + ", " + std::to_string(q) + ")");
  Node n;
  n.kind = Node::Kind::Explicit;
  n.accepting = std::move(accepting);
  return RegLanguage(type, q, make_node(std::move(n)));
}

RegLanguage RegLanguage::atom(const Type& type, int q, const Element& x) {
  if (x.type() != type || x.q() != q)
    throw error("atom element does not live in den(" + to_string(type) +
                ", " + std::to_string(q) + ")");
  return of_indices(type, q, {x.index()});
}

RegLanguage RegLanguage::eval_preimage(std::vector<Element> letters,
                                       std::int64_t start,
                                       std::set<std::int64_t> finals) {
  if (letters.empty())
    throw error("eval_preimage requires at least one letter function");
  const Type oo = Type::arrow(Type::base(), Type::base());
  int q = letters.front().q();
  for (const Element& f : letters) {
    if (f.type() != oo)
      throw error("letter functions must have type o->o");
    if (f.q() != q) throw error("letter functions at mixed levels");
  }
  if (start < 0 || start >= q) throw error("start value outside [q]");
  for (std::int64_t s : finals)
    if (s < 0 || s >= q) throw error("final value outside [q]");
  Node n;
  n.kind = Node::Kind::EvalPreimage;
  n.start = start;
  n.finals = std::move(finals);
  int count = static_cast<int>(letters.size());
  n.letters = std::move(letters);
  return RegLanguage(church_type(count), q, make_node(std::move(n)));
}

RegLanguage RegLanguage::psurj_preimage(const PartialSurjection& f,
                                        RegLanguage inner) {
  if (!f.is_valid()) throw error("invalid partial surjection");
  if (f.rhs != inner.q_)
    throw error("partial surjection lands at level " + std::to_string(f.rhs) +
                " but the language lives at " + std::to_string(inner.q_));
  Node n;
  n.kind = Node::Kind::PsurjPreimage;
  n.psurj = f;
  n.inner = inner.root_;
  n.inner_q = inner.q_;
  return RegLanguage(inner.type_, static_cast<int>(f.lhs),
                     make_node(std::move(n)));
}

bool RegLanguage::accepts(const Element& x, const Config& cfg) const {
  if (x.type() != type_ || x.q() != q_)
    throw error("element is not in den(" + to_string(type_) + ", " +
                std::to_string(q_) + ")");
  return node_accepts(*root_, type_, q_, x, cfg);
}

bool RegLanguage::member(const Term& m, const Config& cfg) const {
  Type ty = typecheck(m);
  if (ty != type_)
    throw type_error("term has type " + to_string(ty) + ", language is at " +
                     to_string(type_));
  return accepts(interpret(m, q_, {}, {}, cfg), cfg);
}

std::vector<Nat> RegLanguage::normalized_atoms(const DefSet& defs,
                                               const Config& cfg) const {
  if (defs.type != type_ || defs.q != q_)
    throw error("definable set does not match the language's type and level");
  std::vector<Nat> out;
  for (const Nat& e : defs.elements)
    if (accepts(Element(Den{type_, q_}, e), cfg)) out.push_back(e);
  return out;
}

RegLanguage RegLanguage::embed(int q_to, const Config& cfg) const {
  (void)cfg;
  if (q_to < q_)
    throw error("embed goes to a level >= " + std::to_string(q_));
  if (q_to == q_) return *this;
  return psurj_preimage(PartialSurjection::identity_embedding(q_to, q_),
                        *this);
}

namespace {
void require_same_frame(const RegLanguage& a, const RegLanguage& b) {
  if (a.type() != b.type() || a.q() != b.q())
    throw error("boolean operations need languages at one type and level");
}
}  // namespace

RegLanguage lang_union(const RegLanguage& a, const RegLanguage& b) {
  require_same_frame(a, b);
  Node n;
  n.kind = Node::Kind::Union;
  n.left = a.root_;
  n.right = b.root_;
  return RegLanguage(a.type_, a.q_, make_node(std::move(n)));
}

RegLanguage lang_inter(const RegLanguage& a, const RegLanguage& b) {
  require_same_frame(a, b);
  Node n;
  n.kind = Node::Kind::Inter;
  n.left = a.root_;
  n.right = b.root_;
  return RegLanguage(a.type_, a.q_, make_node(std::move(n)));
}

RegLanguage lang_complement(const RegLanguage& a) {
  Node n;
  n.kind = Node::Kind::Complement;
  n.left = a.root_;
  return RegLanguage(a.type_, a.q_, make_node(std::move(n)));
}

PartialSurjection coproduct_first(int q1, int q2) {
  std::vector<std::int64_t> map(static_cast<std::size_t>(q1 + q2), -1);
  for (int i = 0; i < q1; ++i) map[static_cast<std::size_t>(i)] = i;
  return PartialSurjection{q1 + q2, q1, std::move(map)};
}

PartialSurjection coproduct_second(int q1, int q2) {
  std::vector<std::int64_t> map(static_cast<std::size_t>(q1 + q2), -1);
  for (int i = 0; i < q2; ++i) map[static_cast<std::size_t>(q1 + i)] = i;
  return PartialSurjection{q1 + q2, q2, std::move(map)};
}

RegLanguage intersect_across(const RegLanguage& a, const RegLanguage& b,
                             const Config& cfg) {
  (void)cfg;
  if (a.type() != b.type())
    throw error("intersect_across needs languages at one type");
  RegLanguage up_a =
      RegLanguage::psurj_preimage(coproduct_first(a.q(), b.q()), a);
  RegLanguage up_b =
      RegLanguage::psurj_preimage(coproduct_second(a.q(), b.q()), b);
  return lang_inter(up_a, up_b);
}

LangEquality same_language(const RegLanguage& a, const RegLanguage& b,
                           const Config& cfg) {
  if (a.type() != b.type())
    throw error("same_language needs languages at one type");
  int q = std::max(a.q(), b.q());
  RegLanguage ea = a.embed(q, cfg), eb = b.embed(q, cfg);
  DefSet defs = def_set(a.type(), q, -1, cfg);
  LangEquality out;
  out.certified = defs.exact;
  out.equal_on_definables =
      ea.normalized_atoms(defs, cfg) == eb.normalized_atoms(defs, cfg);
  return out;
}

}  // namespace prolam
