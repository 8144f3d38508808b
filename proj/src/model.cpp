#include "prolam/model.hpp"

#include <map>
#include <mutex>

namespace prolam {

namespace {

// hard ceiling on the bit length of an exact size; 2^24 bits is a 2 MB
// number, far beyond anything a desk-scale computation touches
constexpr std::int64_t kMaxSizeBits = std::int64_t(1) << 24;
constexpr std::int64_t kMaxExponent = std::int64_t(1) << 22;

Nat pow_nat(const Nat& base, std::uint64_t exp) {
  Nat acc = 1, b = base;
  while (exp) {
    if (exp & 1) acc *= b;
    b *= b;
    exp >>= 1;
  }
  return acc;
}

std::int64_t bit_length(const Nat& n) {
  if (n == 0) return 0;
  return static_cast<std::int64_t>(boost::multiprecision::msb(n)) + 1;
}

Nat den_size_uncached(const Type& t, int q) {
  switch (t.tag()) {
    case Type::Tag::Base:
      return q;
    case Type::Tag::Unit:
      return 1;
    case Type::Tag::Product:
      return den_size(t.left(), q) * den_size(t.right(), q);
    case Type::Tag::Arrow: {
      Nat sa = den_size(t.left(), q);
      Nat sb = den_size(t.right(), q);
      if (sa == 0) return 1;  // the empty function
      if (sb == 0) return 0;
      if (sa > kMaxExponent)
        throw cap_error("size of [[" + to_string(t) + "]] at q=" +
                        std::to_string(q) + " is too large to represent");
      auto exp = static_cast<std::uint64_t>(sa);
      if (bit_length(sb) * static_cast<std::int64_t>(exp) > kMaxSizeBits)
        throw cap_error("size of [[" + to_string(t) + "]] at q=" +
                        std::to_string(q) + " is too large to represent");
      return pow_nat(sb, exp);
    }
  }
  throw invariant_error("unreachable type tag");
}

}  // namespace

Nat den_size(const Type& t, int q) {
  if (q < 0) throw error("negative base cardinality");
  // trivial cases skip the cache
  if (t.tag() == Type::Tag::Base) return q;
  if (t.tag() == Type::Tag::Unit) return 1;
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, Nat> cache;
  auto key = std::make_pair(to_string(t), q);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Nat value = den_size_uncached(t, q);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::move(key), std::move(value)).first->second;
}

Nat Den::size() const { return den_size(type, q); }

bool Den::size_fits(std::int64_t cap) const {
  try {
    return size() <= cap;
  } catch (const cap_error&) {
    return false;
  }
}

Element::Element(Den den, Nat index) {
  if (index < 0 || index >= den.size())
    throw error("element index " + index.str() + " out of range for [[" +
                to_string(den.type) + "]] at q=" + std::to_string(den.q));
  den_ = std::move(den);
  index_ = std::move(index);
}

Element Element::trusted(Den den, Nat index) {
  Element e;
  e.den_ = std::move(den);
  e.index_ = std::move(index);
  return e;
}

std::vector<Nat> Element::table(const Config& cfg) const {
  if (type().tag() != Type::Tag::Arrow)
    throw error("table view requested at non-arrow type " + to_string(type()));
  Den arg{type().left(), den_.q};
  if (!arg.size_fits(cfg.table_cap))
    throw cap_error("table of [[" + to_string(type()) + "]] at q=" +
                    std::to_string(den_.q) + " exceeds the cap of " +
                    std::to_string(cfg.table_cap) + " entries");
  auto len = static_cast<std::size_t>(arg.size());
  Nat radix = den_size(type().right(), den_.q);
  std::vector<Nat> out;
  out.reserve(len);
  Nat rest = index_;
  for (std::size_t i = 0; i < len; ++i) {
    out.push_back(rest % radix);
    rest /= radix;
  }
  return out;
}

Element base_element(int q, std::int64_t value) {
  return Element(Den{Type::base(), q}, Nat(value));
}

Element apply(const Element& g, const Element& x) {
  if (g.type().tag() != Type::Tag::Arrow)
    throw error("apply on non-arrow element of type " + to_string(g.type()));
  if (x.type() != g.type().left() || x.q() != g.q())
    throw error("apply argument has type " + to_string(x.type()) + " at q=" +
                std::to_string(x.q()) + ", expected " +
                to_string(g.type().left()) + " at q=" + std::to_string(g.q()));
  if (x.index() > (Nat(1) << 62))
    throw cap_error("argument index too large for digit extraction");
  auto pos = static_cast<std::uint64_t>(x.index());
  Nat radix = den_size(g.type().right(), g.q());
  Nat digit = (g.index() / pow_nat(radix, pos)) % radix;
  return Element::trusted(Den{g.type().right(), g.q()}, std::move(digit));
}

Element tabulate(const Den& arrow_den,
                 const std::function<Element(const Element&)>& fn,
                 const Config& cfg) {
  if (arrow_den.type.tag() != Type::Tag::Arrow)
    throw error("tabulate requires an arrow type, got " +
                to_string(arrow_den.type));
  Den arg{arrow_den.type.left(), arrow_den.q};
  Den res{arrow_den.type.right(), arrow_den.q};
  if (!arg.size_fits(cfg.table_cap))
    throw cap_error("tabulating [[" + to_string(arrow_den.type) + "]] at q=" +
                    std::to_string(arrow_den.q) + " exceeds the cap of " +
                    std::to_string(cfg.table_cap) + " entries");
  auto len = static_cast<std::int64_t>(arg.size());
  Nat radix = res.size();
  Nat acc = 0, mult = 1;
  for (std::int64_t x = 0; x < len; ++x) {
    Element v = fn(Element::trusted(arg, Nat(x)));
    if (v.den() != res)
      throw error("tabulate callback returned an element of [[" +
                  to_string(v.type()) + "]], expected [[" +
                  to_string(res.type) + "]]");
    acc += v.index() * mult;
    mult *= radix;
  }
  return Element::trusted(arrow_den, std::move(acc));
}

namespace {

Element eval(const Term& t, int q, const Context& ctx,
             const std::vector<Element>& env, const Config& cfg) {
  switch (t.tag()) {
    case Term::Tag::Var: {
      int i = t.index();
      if (i < 0 || i >= static_cast<int>(env.size()))
        throw error("environment does not cover de Bruijn index " +
                    std::to_string(i));
      return env[env.size() - 1 - i];
    }
    case Term::Tag::Unit:
      return Element::trusted(Den{Type::unit(), q}, 0);
    case Term::Tag::Lam: {
      Context inner_ctx = ctx;
      inner_ctx.push_back(t.arg_type());
      Type body_ty = typecheck(t.body(), inner_ctx);
      Den arrow{Type::arrow(t.arg_type(), body_ty), q};
      std::vector<Element> inner_env = env;
      inner_env.emplace_back(Element::trusted(Den{t.arg_type(), q}, 0));
      return tabulate(
          arrow,
          [&](const Element& x) {
            inner_env.back() = x;
            return eval(t.body(), q, inner_ctx, inner_env, cfg);
          },
          cfg);
    }
    case Term::Tag::App:
      return apply(eval(t.fn(), q, ctx, env, cfg),
                   eval(t.arg(), q, ctx, env, cfg));
    case Term::Tag::Pair: {
      Element a = eval(t.first(), q, ctx, env, cfg);
      Element b = eval(t.second(), q, ctx, env, cfg);
      Nat sa = a.den().size();
      return Element::trusted(Den{Type::product(a.type(), b.type()), q},
                              a.index() + sa * b.index());
    }
    case Term::Tag::Fst: {
      Element p = eval(t.sub(), q, ctx, env, cfg);
      Nat sa = den_size(p.type().left(), q);
      return Element::trusted(Den{p.type().left(), q}, p.index() % sa);
    }
    case Term::Tag::Snd: {
      Element p = eval(t.sub(), q, ctx, env, cfg);
      Nat sa = den_size(p.type().left(), q);
      return Element::trusted(Den{p.type().right(), q}, p.index() / sa);
    }
  }
  throw invariant_error("unreachable term tag");
}

}  // namespace

Element interpret(const Term& t, int q, const std::vector<Element>& env,
                  const Context& ctx, const Config& cfg) {
  if (env.size() != ctx.size())
    throw error("environment size " + std::to_string(env.size()) +
                " does not match context size " + std::to_string(ctx.size()));
  for (std::size_t i = 0; i < env.size(); ++i)
    if (env[i].type() != ctx[i] || env[i].q() != q)
      throw error("environment entry " + std::to_string(i) +
                  " does not match the context");
  typecheck(t, ctx);  // reject ill-typed input up front
  return eval(t, q, ctx, env, cfg);
}

Element compose_elements(const Element& f, const Element& g,
                         const Config& cfg) {
  if (f.type().tag() != Type::Tag::Arrow || g.type().tag() != Type::Tag::Arrow)
    throw error("compose_elements requires arrow types");
  if (f.q() != g.q())
    throw error("compose_elements across different base cardinalities");
  if (f.type().right() != g.type().left())
    throw error("compose_elements type mismatch: " + to_string(f.type()) +
                " then " + to_string(g.type()));
  Den result{Type::arrow(f.type().left(), g.type().right()), f.q()};
  return tabulate(
      result, [&](const Element& x) { return apply(g, apply(f, x)); }, cfg);
}

std::vector<std::int64_t> endo_table(std::int64_t index, int q) {
  if (q < 0 || index < 0) throw error("endo_table requires q, index >= 0");
  std::vector<std::int64_t> t(static_cast<std::size_t>(q));
  for (int x = 0; x < q; ++x) {
    t[static_cast<std::size_t>(x)] = index % q;
    index /= q;
  }
  if (index != 0)
    throw error("endofunction index out of range for base size " +
                std::to_string(q));
  return t;
}

std::int64_t endo_index(const std::vector<std::int64_t>& table, int q) {
  if (static_cast<int>(table.size()) != q)
    throw error("endofunction table has size " + std::to_string(table.size()) +
                ", expected " + std::to_string(q));
  std::int64_t idx = 0, mult = 1;
  for (int x = 0; x < q; ++x) {
    std::int64_t v = table[static_cast<std::size_t>(x)];
    if (v < 0 || v >= q)
      throw error("endofunction table entry " + std::to_string(v) +
                  " outside [0," + std::to_string(q) + ")");
    idx += v * mult;
    mult *= q;
  }
  return idx;
}

Element endo_element(const std::vector<std::int64_t>& table, int q) {
  if (static_cast<int>(table.size()) != q)
    throw error("endofunction table has size " + std::to_string(table.size()) +
                ", expected " + std::to_string(q));
  Nat idx = 0, mult = 1;
  for (int x = 0; x < q; ++x) {
    std::int64_t v = table[static_cast<std::size_t>(x)];
    if (v < 0 || v >= q)
      throw error("endofunction table entry " + std::to_string(v) +
                  " outside [0," + std::to_string(q) + ")");
    idx += Nat(v) * mult;
    mult *= q;
  }
  return Element(Den{Type::arrow(Type::base(), Type::base()), q}, idx);
}

std::vector<std::int64_t> word_action(
    int q, const std::vector<std::vector<std::int64_t>>& letter_tables,
    const std::vector<int>& word) {
  for (const auto& t : letter_tables)
    endo_index(t, q);  // validates size and entry ranges
  std::vector<std::int64_t> acc(static_cast<std::size_t>(q));
  for (int x = 0; x < q; ++x) acc[static_cast<std::size_t>(x)] = x;
  for (int w : word) {
    if (w < 0 || w >= static_cast<int>(letter_tables.size()))
      throw error("letter index " + std::to_string(w) +
                  " outside alphabet of size " +
                  std::to_string(letter_tables.size()));
    const auto& f = letter_tables[static_cast<std::size_t>(w)];
    for (int x = 0; x < q; ++x) {
      auto& slot = acc[static_cast<std::size_t>(x)];
      slot = f[static_cast<std::size_t>(slot)];
    }
  }
  return acc;
}

Element word_element(int alphabet_size, const std::vector<int>& word, int q,
                     const Config& cfg) {
  if (alphabet_size < 0 || q < 0)
    throw error("word_element requires alphabet_size, q >= 0");
  for (int w : word)
    if (w < 0 || w >= alphabet_size)
      throw error("letter index " + std::to_string(w) +
                  " outside alphabet of size " + std::to_string(alphabet_size));
  // endofunctions of [q]; their count bounds every digit below
  std::int64_t endo_count = 1;
  for (int i = 0; i < q; ++i) {
    if (endo_count > cfg.table_cap / std::max<std::int64_t>(q, 1))
      throw cap_error("endofunction space of [" + std::to_string(q) +
                      "] exceeds the materialization cap");
    endo_count *= q;
  }
  // one digit per tuple of endofunctions, letter 0 the slowest-moving
  std::int64_t tuples = 1;
  std::vector<std::int64_t> stride(static_cast<std::size_t>(alphabet_size));
  for (int j = alphabet_size - 1; j >= 0; --j) {
    stride[static_cast<std::size_t>(j)] = tuples;
    if (endo_count != 0 && tuples > cfg.table_cap / endo_count)
      throw cap_error("church tuple space for " +
                      std::to_string(alphabet_size) + " letters at q = " +
                      std::to_string(q) + " exceeds the materialization cap");
    tuples *= endo_count;
  }
  std::vector<std::vector<std::int64_t>> endos(
      static_cast<std::size_t>(endo_count));
  for (std::int64_t e = 0; e < endo_count; ++e)
    endos[static_cast<std::size_t>(e)] = endo_table(e, q);
  Nat acc = 0, mult = 1;
  std::vector<std::int64_t> comp(static_cast<std::size_t>(q));
  for (std::int64_t tuple = 0; tuple < tuples; ++tuple) {
    for (int x = 0; x < q; ++x) comp[static_cast<std::size_t>(x)] = x;
    for (int w : word) {
      const auto& f =
          endos[static_cast<std::size_t>((tuple / stride[static_cast<std::size_t>(w)]) %
                                         endo_count)];
      for (int x = 0; x < q; ++x) {
        auto& slot = comp[static_cast<std::size_t>(x)];
        slot = f[static_cast<std::size_t>(slot)];
      }
    }
    acc += Nat(endo_index(comp, q)) * mult;
    mult *= endo_count;
  }
  return Element(Den{church_type(alphabet_size), q}, acc);
}

}  // namespace prolam
