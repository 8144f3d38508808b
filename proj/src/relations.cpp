#include "prolam/relations.hpp"

namespace prolam {

namespace {

std::int64_t checked_pow(std::int64_t base, std::int64_t exp,
                         std::int64_t cap, const char* what) {
  // base^exp, refusing once the result would exceed cap
  std::int64_t acc = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    if (base != 0 && acc > cap / base)
      throw cap_error(std::string(what) + " index space exceeds the cap of " +
                      std::to_string(cap));
    acc *= base;
  }
  return acc;
}

std::int64_t digit(std::int64_t value, std::int64_t pos, std::int64_t radix) {
  for (std::int64_t i = 0; i < pos; ++i) value /= radix;
  return value % radix;
}

}  // namespace

Relation Relation::empty(std::int64_t l, std::int64_t r) {
  return Relation{l, r, std::vector<bool>(static_cast<std::size_t>(l * r), false)};
}
Relation Relation::full(std::int64_t l, std::int64_t r) {
  return Relation{l, r, std::vector<bool>(static_cast<std::size_t>(l * r), true)};
}
Relation Relation::diagonal(std::int64_t n) {
  Relation d = empty(n, n);
  for (std::int64_t i = 0; i < n; ++i) d.add(i, i);
  return d;
}

std::vector<std::pair<std::int64_t, std::int64_t>> Relation::pairs() const {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t i = 0; i < lhs; ++i)
    for (std::int64_t j = 0; j < rhs; ++j)
      if (contains(i, j)) out.emplace_back(i, j);
  return out;
}

Relation random_relation(std::int64_t l, std::int64_t r, std::mt19937_64& rng) {
  Relation out = Relation::empty(l, r);
  for (std::size_t i = 0; i < out.bits.size(); ++i)
    out.bits[i] = (rng() & 1) != 0;
  return out;
}

bool PartialSurjection::is_valid() const {
  if (static_cast<std::int64_t>(map.size()) != lhs) return false;
  std::vector<bool> hit(static_cast<std::size_t>(rhs), false);
  for (std::int64_t v : map) {
    if (v < -1 || v >= rhs) return false;
    if (v >= 0) hit[static_cast<std::size_t>(v)] = true;
  }
  for (bool h : hit)
    if (!h) return false;
  return true;
}

Relation PartialSurjection::graph() const {
  Relation g = Relation::empty(lhs, rhs);
  for (std::int64_t i = 0; i < lhs; ++i)
    if (defined(i)) g.add(i, at(i));
  return g;
}

std::optional<PartialSurjection> PartialSurjection::from_relation(const Relation& r) {
  PartialSurjection p{r.lhs, r.rhs,
                      std::vector<std::int64_t>(static_cast<std::size_t>(r.lhs), -1)};
  for (std::int64_t i = 0; i < r.lhs; ++i)
    for (std::int64_t j = 0; j < r.rhs; ++j)
      if (r.contains(i, j)) {
        if (p.map[static_cast<std::size_t>(i)] >= 0) return std::nullopt;  // not functional
        p.map[static_cast<std::size_t>(i)] = j;
      }
  if (!p.is_valid()) return std::nullopt;  // not surjective
  return p;
}

PartialSurjection PartialSurjection::identity_embedding(std::int64_t q_from,
                                                        std::int64_t q_to) {
  if (q_from < q_to)
    throw error("no partial surjection from [" + std::to_string(q_from) +
                "] onto [" + std::to_string(q_to) + "]");
  PartialSurjection p{q_from, q_to,
                      std::vector<std::int64_t>(static_cast<std::size_t>(q_from), -1)};
  for (std::int64_t i = 0; i < q_to; ++i) p.map[static_cast<std::size_t>(i)] = i;
  return p;
}

std::vector<PartialSurjection> all_partial_surjections(std::int64_t q,
                                                       std::int64_t q_to) {
  if (q > 30) throw cap_error("partial surjection enumeration beyond [30]");
  std::vector<PartialSurjection> out;
  for (std::int64_t mask = 0; mask < (std::int64_t(1) << q); ++mask) {
    std::vector<std::int64_t> dom;
    for (std::int64_t i = 0; i < q; ++i)
      if (mask & (std::int64_t(1) << i)) dom.push_back(i);
    if (static_cast<std::int64_t>(dom.size()) < q_to) continue;
    if (q_to == 0) {
      if (dom.empty())
        out.push_back(PartialSurjection{
            q, 0, std::vector<std::int64_t>(static_cast<std::size_t>(q), -1)});
      continue;
    }
    // odometer over assignments dom -> [q_to], first position fastest
    std::vector<std::int64_t> assign(dom.size(), 0);
    while (true) {
      std::vector<bool> hit(static_cast<std::size_t>(q_to), false);
      for (std::int64_t v : assign) hit[static_cast<std::size_t>(v)] = true;
      bool surj = true;
      for (bool h : hit) surj = surj && h;
      if (surj) {
        PartialSurjection p{q, q_to,
                            std::vector<std::int64_t>(static_cast<std::size_t>(q), -1)};
        for (std::size_t k = 0; k < dom.size(); ++k)
          p.map[static_cast<std::size_t>(dom[k])] = assign[k];
        out.push_back(std::move(p));
      }
      std::size_t pos = 0;
      while (pos < assign.size() && ++assign[pos] == q_to) assign[pos++] = 0;
      if (pos == assign.size()) break;
    }
  }
  return out;
}

Relation rel_exponential(const Relation& S, const Relation& R,
                         const Config& cfg) {
  std::int64_t gl = checked_pow(R.lhs, S.lhs, cfg.table_cap, "exponential");
  std::int64_t hl = checked_pow(R.rhs, S.rhs, cfg.table_cap, "exponential");
  auto spairs = S.pairs();
  Relation out = Relation::empty(gl, hl);
  for (std::int64_t g = 0; g < gl; ++g)
    for (std::int64_t h = 0; h < hl; ++h) {
      bool ok = true;
      for (const auto& [x, y] : spairs)
        if (!R.contains(digit(g, x, R.lhs), digit(h, y, R.rhs))) {
          ok = false;
          break;
        }
      if (ok) out.add(g, h);
    }
  return out;
}

PartialSurjection psurj_exponential(const PartialSurjection& e,
                                    const PartialSurjection& f,
                                    const Config& cfg) {
  if (!e.is_valid() || !f.is_valid())
    throw error("psurj_exponential requires valid partial surjections");
  auto converted =
      PartialSurjection::from_relation(rel_exponential(e.graph(), f.graph(), cfg));
  if (!converted)
    throw invariant_error(
        "exponential of partial surjections is not a partial surjection");
  return *converted;
}

PartialSurjection psurj_exponential_direct(const PartialSurjection& e,
                                           const PartialSurjection& f,
                                           const Config& cfg) {
  if (!e.is_valid() || !f.is_valid())
    throw error("psurj_exponential requires valid partial surjections");
  std::int64_t gl = checked_pow(f.lhs, e.lhs, cfg.table_cap, "exponential");
  std::int64_t hl = checked_pow(f.rhs, e.rhs, cfg.table_cap, "exponential");
  PartialSurjection out{gl, hl,
                        std::vector<std::int64_t>(static_cast<std::size_t>(gl), -1)};
  std::vector<bool> hit(static_cast<std::size_t>(hl), false);
  for (std::int64_t g = 0; g < gl; ++g) {
    // h(e(x)) must equal f(g(x)) on the whole domain of e, consistently
    std::vector<std::int64_t> hdig(static_cast<std::size_t>(e.rhs), -1);
    bool ok = true;
    for (std::int64_t x = 0; x < e.lhs && ok; ++x) {
      if (!e.defined(x)) continue;
      std::int64_t gx = digit(g, x, f.lhs);
      if (!f.defined(gx)) {
        ok = false;
        break;
      }
      std::int64_t y = e.at(x), v = f.at(gx);
      if (hdig[static_cast<std::size_t>(y)] < 0)
        hdig[static_cast<std::size_t>(y)] = v;
      else if (hdig[static_cast<std::size_t>(y)] != v)
        ok = false;
    }
    if (!ok) continue;
    // e is surjective, so every digit of h is pinned
    std::int64_t h = 0, mult = 1;
    for (std::int64_t y = 0; y < e.rhs; ++y) {
      if (hdig[static_cast<std::size_t>(y)] < 0)
        throw invariant_error("unpinned digit under a surjective exponent");
      h += hdig[static_cast<std::size_t>(y)] * mult;
      mult *= f.rhs;
    }
    out.map[static_cast<std::size_t>(g)] = h;
    hit[static_cast<std::size_t>(h)] = true;
  }
  for (bool b : hit)
    if (!b)
      throw invariant_error(
          "exponential of partial surjections is not surjective (maps " +
          std::to_string(gl) + " functions onto " + std::to_string(hl) + ")");
  return out;
}

//// logical relation membership //////////////////////////////////////////

LogicalRelation::LogicalRelation(Relation base, Config cfg)
    : base_(std::move(base)), cfg_(cfg) {}

bool LogicalRelation::member(const Type& A, const Element& x, const Element& y) {
  if (x.type() != A || y.type() != A)
    throw error("logical relation membership at mismatched types");
  if (x.q() != q() || y.q() != q_to())
    throw error("logical relation membership at mismatched cardinalities");
  return member_index(A, x.index(), y.index());
}

bool LogicalRelation::member_index(const Type& A, const Nat& x, const Nat& y) {
  switch (A.tag()) {
    case Type::Tag::Base:
      return base_.contains(static_cast<std::int64_t>(x),
                            static_cast<std::int64_t>(y));
    case Type::Tag::Unit:
      return true;
    case Type::Tag::Product: {
      Nat sa_l = den_size(A.left(), q());
      Nat sa_r = den_size(A.left(), q_to());
      return member_index(A.left(), x % sa_l, y % sa_r) &&
             member_index(A.right(), x / sa_l, y / sa_r);
    }
    case Type::Tag::Arrow:
      break;
  }
  auto key = std::make_tuple(to_string(A), x, y);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  // quantify over all related argument pairs
  Den dl{A.left(), q()}, dr{A.left(), q_to()};
  if (!dl.size_fits(cfg_.table_cap) || !dr.size_fits(cfg_.table_cap))
    throw cap_error("logical relation membership at [[" + to_string(A) +
                    "]] must enumerate an over-cap denotation");
  auto nl = static_cast<std::int64_t>(dl.size());
  auto nr = static_cast<std::int64_t>(dr.size());
  Nat radix_l = den_size(A.right(), q());
  Nat radix_r = den_size(A.right(), q_to());
  bool ok = true;
  Nat gshift = x;  // digits of x consumed incrementally
  for (std::int64_t u = 0; u < nl && ok; ++u) {
    Nat xu = gshift % radix_l;
    gshift /= radix_l;
    Nat hshift = y;
    for (std::int64_t v = 0; v < nr && ok; ++v) {
      Nat yv = hshift % radix_r;
      hshift /= radix_r;
      if (!member_index(A.left(), Nat(u), Nat(v))) continue;
      if (!member_index(A.right(), xu, yv)) ok = false;
    }
  }
  memo_.emplace(std::move(key), ok);
  return ok;
}

bool logical_relation_member(const Type& A, const Relation& R,
                             const Element& x, const Element& y,
                             const Config& cfg) {
  LogicalRelation lr(R, cfg);
  return lr.member(A, x, y);
}

PartialSurjection logical_relation_of_psurj(const Type& A,
                                            const PartialSurjection& f,
                                            const Config& cfg) {
  if (!f.is_valid())
    throw error("logical_relation_of_psurj requires a valid partial surjection");
  switch (A.tag()) {
    case Type::Tag::Base:
      return f;
    case Type::Tag::Unit:
      return PartialSurjection{1, 1, {0}};
    case Type::Tag::Product: {
      PartialSurjection l = logical_relation_of_psurj(A.left(), f, cfg);
      PartialSurjection r = logical_relation_of_psurj(A.right(), f, cfg);
      if (l.lhs != 0 && r.lhs > cfg.table_cap / (l.lhs == 0 ? 1 : l.lhs))
        throw cap_error("product index space exceeds the cap");
      PartialSurjection out{
          l.lhs * r.lhs, l.rhs * r.rhs,
          std::vector<std::int64_t>(static_cast<std::size_t>(l.lhs * r.lhs), -1)};
      for (std::int64_t i = 0; i < l.lhs; ++i)
        for (std::int64_t j = 0; j < r.lhs; ++j)
          if (l.defined(i) && r.defined(j))
            out.map[static_cast<std::size_t>(i + l.lhs * j)] =
                l.at(i) + l.rhs * r.at(j);
      return out;
    }
    case Type::Tag::Arrow: {
      PartialSurjection l = logical_relation_of_psurj(A.left(), f, cfg);
      PartialSurjection r = logical_relation_of_psurj(A.right(), f, cfg);
      return psurj_exponential_direct(l, r, cfg);
    }
  }
  throw invariant_error("unreachable type tag");
}

}  // namespace prolam
