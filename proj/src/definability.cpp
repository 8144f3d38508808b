#include "prolam/definability.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace prolam {

namespace {

constexpr int kSaturationWindow = 3;    // sizes with no news before stopping
constexpr std::size_t kChurchBudget = 200000;  // max BFS states

//// normal-form enumeration ///////////////////////////////////////////////

struct NfGen {
  // memo of all eta-long normal forms of a type in a context at an exact
  // node count
  std::map<std::string, std::vector<Term>> memo;

  static std::string key(const Type& ty, const Context& ctx, int size) {
    std::ostringstream os;
    os << size << '|' << to_string(ty);
    for (const auto& t : ctx) os << ';' << to_string(t);
    return os.str();
  }

  const std::vector<Term>& gen(const Type& ty, const Context& ctx, int size) {
    std::string k = key(ty, ctx, size);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    std::vector<Term> out;
    if (size >= 1) {
      switch (ty.tag()) {
        case Type::Tag::Arrow: {
          Context inner = ctx;
          inner.push_back(ty.left());
          for (const Term& b : gen(ty.right(), inner, size - 1))
            out.push_back(Term::lam(ty.left(), b));
          break;
        }
        case Type::Tag::Product:
          for (int sa = 1; sa <= size - 2; ++sa)
            for (const Term& a : gen(ty.left(), ctx, sa))
              for (const Term& b : gen(ty.right(), ctx, size - 1 - sa))
                out.push_back(Term::pair(a, b));
          break;
        case Type::Tag::Unit:
          if (size == 1) out.push_back(Term::unit());
          break;
        case Type::Tag::Base:
          // neutral spines: pick a head variable, then consume its type
          // with applications and projections until the base type
          for (std::size_t pos = 0; pos < ctx.size(); ++pos) {
            int idx = static_cast<int>(ctx.size() - 1 - pos);
            spines(Term::var(idx), ctx[pos], ctx, size - 1, out);
          }
          break;
      }
    }
    return memo.emplace(std::move(k), std::move(out)).first->second;
  }

  // extend neutral `h` of type `ty` to terms of the base type using
  // exactly `extra` additional nodes
  void spines(const Term& h, const Type& ty, const Context& ctx, int extra,
              std::vector<Term>& out) {
    switch (ty.tag()) {
      case Type::Tag::Base:
        if (extra == 0) out.push_back(h);
        break;
      case Type::Tag::Arrow:
        for (int sa = 1; sa <= extra - 1; ++sa)
          for (const Term& arg : gen(ty.left(), ctx, sa))
            spines(Term::app(h, arg), ty.right(), ctx, extra - 1 - sa, out);
        break;
      case Type::Tag::Product:
        if (extra >= 1) {
          spines(Term::fst(h), ty.left(), ctx, extra - 1, out);
          spines(Term::snd(h), ty.right(), ctx, extra - 1, out);
        }
        break;
      case Type::Tag::Unit:
        break;  // no neutral of unit type reaches the base type
    }
  }
};

//// inhabitation //////////////////////////////////////////////////////////

std::string inhab_key(const Context& ctx, const Type& goal) {
  std::set<std::string> avail;
  for (const auto& t : ctx) avail.insert(to_string(t));
  std::ostringstream os;
  os << to_string(goal);
  for (const auto& s : avail) os << '|' << s;
  return os.str();
}

// elimination path from head `h : ty` towards the base type; arguments are
// filled by the mutually recursive search
std::optional<Term> search(const Context& ctx, const Type& goal,
                           std::set<std::string>& visiting);

std::optional<Term> eliminate(const Term& h, const Type& ty,
                              const Context& ctx, const Type& goal,
                              std::set<std::string>& visiting) {
  if (ty == goal) return h;
  switch (ty.tag()) {
    case Type::Tag::Arrow:
      if (auto arg = search(ctx, ty.left(), visiting))
        return eliminate(Term::app(h, *arg), ty.right(), ctx, goal, visiting);
      return std::nullopt;
    case Type::Tag::Product:
      if (auto a = eliminate(Term::fst(h), ty.left(), ctx, goal, visiting))
        return a;
      return eliminate(Term::snd(h), ty.right(), ctx, goal, visiting);
    default:
      return std::nullopt;
  }
}

std::optional<Term> search(const Context& ctx, const Type& goal,
                           std::set<std::string>& visiting) {
  switch (goal.tag()) {
    case Type::Tag::Unit:
      return Term::unit();
    case Type::Tag::Arrow: {
      Context inner = ctx;
      inner.push_back(goal.left());
      if (auto b = search(inner, goal.right(), visiting))
        return Term::lam(goal.left(), *b);
      return std::nullopt;
    }
    case Type::Tag::Product:
      if (auto a = search(ctx, goal.left(), visiting))
        if (auto b = search(ctx, goal.right(), visiting))
          return Term::pair(*a, *b);
      return std::nullopt;
    case Type::Tag::Base: {
      std::string k = inhab_key(ctx, goal);
      if (visiting.count(k)) return std::nullopt;  // cycle: this branch fails
      visiting.insert(k);
      std::optional<Term> found;
      for (std::size_t pos = 0; pos < ctx.size() && !found; ++pos) {
        int idx = static_cast<int>(ctx.size() - 1 - pos);
        found = eliminate(Term::var(idx), ctx[pos], ctx, goal, visiting);
      }
      visiting.erase(k);
      return found;
    }
  }
  throw invariant_error("unreachable type tag");
}

//// type-shape dispatch ///////////////////////////////////////////////////

// o => o => ... => o with k >= 1 arguments
int first_order_arity(const Type& ty) {
  int k = 0;
  Type t = ty;
  while (t.tag() == Type::Tag::Arrow && t.left().tag() == Type::Tag::Base) {
    ++k;
    t = t.right();
  }
  return (k >= 1 && t.tag() == Type::Tag::Base) ? k : 0;
}

// (o=>o) => ... => (o=>o) => o => o with n >= 1 letter arguments
int church_arity(const Type& ty) {
  const Type oo = Type::arrow(Type::base(), Type::base());
  int n = 0;
  Type t = ty;
  while (t.tag() == Type::Tag::Arrow && t.left() == oo) {
    ++n;
    t = t.right();
  }
  return (n >= 1 && t == oo) ? n : 0;
}

Alphabet default_alphabet(int n) {
  Alphabet out;
  for (int j = 0; j < n; ++j)
    out.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + j))
                          : "l" + std::to_string(j + 1));
  return out;
}

DefSet finish(DefSet d) {
  std::sort(d.elements.begin(), d.elements.end());
  return d;
}

}  // namespace

bool DefSet::contains(const Nat& index) const {
  return std::binary_search(elements.begin(), elements.end(), index);
}

std::vector<Term> enumerate_normal_forms(const Type& type, int max_size) {
  NfGen g;
  std::vector<Term> out;
  for (int size = 1; size <= max_size; ++size)
    for (const Term& t : g.gen(type, {}, size)) out.push_back(t);
  return out;
}

bool is_inhabited(const Type& type) { return inhabitant(type).has_value(); }

std::optional<Term> inhabitant(const Type& type) {
  std::set<std::string> visiting;
  return search({}, type, visiting);
}

DefSet church_def_set(const Alphabet& alphabet, int q, const Config& cfg) {
  if (q < 0) throw error("church_def_set requires q >= 0");
  int n = static_cast<int>(alphabet.size());
  std::int64_t endo_count = 1;
  for (int i = 0; i < q; ++i) {
    if (endo_count > cfg.table_cap / std::max<std::int64_t>(q, 1))
      throw cap_error("endofunction space of [" + std::to_string(q) +
                      "] exceeds the materialization cap");
    endo_count *= q;
  }
  std::int64_t tuples = 1;
  std::vector<std::int64_t> stride(static_cast<std::size_t>(n));
  for (int j = n - 1; j >= 0; --j) {
    stride[static_cast<std::size_t>(j)] = tuples;
    if (tuples > cfg.table_cap / endo_count)
      throw cap_error("church tuple space for " + std::to_string(n) +
                      " letters at q = " + std::to_string(q) +
                      " exceeds the materialization cap");
    tuples *= endo_count;
  }
  std::vector<std::vector<std::int64_t>> endos(
      static_cast<std::size_t>(endo_count));
  for (std::int64_t e = 0; e < endo_count; ++e)
    endos[static_cast<std::size_t>(e)] = endo_table(e, q);

  // breadth-first closure of the word-interpretation image under one-letter
  // extension; a state holds the composite endofunction per argument tuple
  using State = std::vector<std::int64_t>;
  auto element_of = [&](const State& s) {
    Nat acc = 0, mult = 1;
    for (std::int64_t v : s) {
      acc += Nat(v) * mult;
      mult *= endo_count;
    }
    return acc;
  };
  State start(static_cast<std::size_t>(tuples),
              endo_index([&] {
                std::vector<std::int64_t> id(static_cast<std::size_t>(q));
                for (int x = 0; x < q; ++x) id[static_cast<std::size_t>(x)] = x;
                return id;
              }(), q));
  std::map<Nat, std::vector<int>> reps;
  reps.emplace(element_of(start), std::vector<int>{});
  std::deque<std::pair<State, std::vector<int>>> frontier;
  frontier.emplace_back(start, std::vector<int>{});
  while (!frontier.empty()) {
    auto [state, word] = std::move(frontier.front());
    frontier.pop_front();
    for (int j = 0; j < n; ++j) {
      State next(state.size());
      for (std::int64_t p = 0; p < tuples; ++p) {
        const auto& f = endos[static_cast<std::size_t>(
            (p / stride[static_cast<std::size_t>(j)]) % endo_count)];
        auto comp = endo_table(state[static_cast<std::size_t>(p)], q);
        for (int x = 0; x < q; ++x) {
          auto& slot = comp[static_cast<std::size_t>(x)];
          slot = f[static_cast<std::size_t>(slot)];
        }
        next[static_cast<std::size_t>(p)] = endo_index(comp, q);
      }
      Nat elem = element_of(next);
      if (reps.count(elem)) continue;
      if (reps.size() >= kChurchBudget)
        throw error("church word closure exceeded the state budget of " +
                    std::to_string(kChurchBudget));
      std::vector<int> w2 = word;
      w2.push_back(j);
      reps.emplace(std::move(elem), w2);
      frontier.emplace_back(std::move(next), std::move(w2));
    }
  }

  DefSet d{church_type(n), q, true, "church-word-closure", 0, {}, {}};
  for (const auto& [elem, word] : reps) {
    Term witness = church_term(alphabet, word);
    d.max_size_searched = std::max(d.max_size_searched, term_size(witness));
    d.elements.push_back(elem);
    d.witnesses.emplace(elem, std::move(witness));
  }
  return finish(std::move(d));
}

DefSet def_set(const Type& type, int q, int budget, const Config& cfg) {
  if (q < 0) throw error("def_set requires q >= 0");
  if (budget < 0) budget = cfg.term_budget;

  if (int k = first_order_arity(type); k > 0) {
    DefSet d{type, q, true, "first-order-projections", 0, {}, {}};
    for (int i = 0; i < k; ++i) {
      // \x1...\xk. x_{i+1}
      Term t = Term::var(k - 1 - i);
      for (int j = 0; j < k; ++j) t = Term::lam(Type::base(), std::move(t));
      d.max_size_searched = std::max(d.max_size_searched, term_size(t));
      Nat e = interpret(t, q, {}, {}, cfg).index();
      if (!d.witnesses.count(e)) {
        d.elements.push_back(e);
        d.witnesses.emplace(std::move(e), std::move(t));
      }
    }
    return finish(std::move(d));
  }

  if (int n = church_arity(type); n > 0)
    return church_def_set(default_alphabet(n), q, cfg);

  auto witness = inhabitant(type);
  if (!witness) return DefSet{type, q, true, "uninhabited-empty", 0, {}, {}};

  if (q <= 1) {
    // den(A, 1) is a singleton for every type, likewise den(A, 0) for
    // every inhabited type (an empty denotation forces uninhabitation)
    Term w = normalize(*witness);
    Element e = interpret(w, q, {}, {}, cfg);
    DefSet d{type, q, true, "level-one-singleton", term_size(w), {}, {}};
    d.elements.push_back(e.index());
    d.witnesses.emplace(e.index(), std::move(w));
    return finish(std::move(d));
  }

  Nat full = den_size(type, q);
  DefSet d{type, q, false, "enumeration", 0, {}, {}};
  NfGen g;
  int stale = 0;
  for (int size = 1; size <= budget && stale < kSaturationWindow; ++size) {
    bool news = false;
    for (const Term& t : g.gen(type, {}, size)) {
      Nat e = interpret(t, q, {}, {}, cfg).index();
      if (!d.witnesses.count(e)) {
        d.elements.push_back(e);
        d.witnesses.emplace(std::move(e), t);
        news = true;
      }
    }
    d.max_size_searched = size;
    // quiet sizes only count towards saturation once something was found,
    // otherwise types whose least inhabitant is large would never be seen
    if (news)
      stale = 0;
    else if (!d.elements.empty())
      ++stale;
    if (Nat(d.elements.size()) == full) {
      // the image cannot grow past the whole denotation
      d.exact = true;
      d.method = "full-denotation";
      break;
    }
  }
  return finish(std::move(d));
}

std::map<Nat, Nat> restrict_def(const DefSet& at_q, int q_to,
                                const Config& cfg) {
  if (q_to < 1 || at_q.q < q_to)
    throw error("restriction requires q >= q' >= 1, got q = " +
                std::to_string(at_q.q) + ", q' = " + std::to_string(q_to));
  std::map<Nat, Nat> out;
  for (const Nat& e : at_q.elements) {
    auto it = at_q.witnesses.find(e);
    if (it == at_q.witnesses.end())
      throw invariant_error("definable element without a stored witness");
    out.emplace(e, interpret(it->second, q_to, {}, {}, cfg).index());
  }
  return out;
}

DefSet restrict_def_set(const DefSet& at_q, int q_to, const Config& cfg) {
  auto map = restrict_def(at_q, q_to, cfg);
  DefSet d{at_q.type, q_to, at_q.exact, "restriction", at_q.max_size_searched,
           {}, {}};
  for (const auto& [hi, lo] : map) {
    if (!d.witnesses.count(lo)) {
      d.elements.push_back(lo);
      d.witnesses.emplace(lo, at_q.witnesses.at(hi));
    }
  }
  return finish(std::move(d));
}

}  // namespace prolam
