#include "prolam/profinite.hpp"

#include <map>
#include <random>
#include <string>

namespace prolam {

namespace {

// n such that t == church_type(n) (n = 0 gives o=>o), or -1
int church_arity_of(const Type& t) {
  const Type oo = Type::arrow(Type::base(), Type::base());
  Type cur = t;
  int n = 0;
  while (cur.tag() == Type::Tag::Arrow && cur.left() == oo) {
    cur = cur.right();
    ++n;
  }
  return cur == oo ? n : -1;
}

std::string level_str(int q) { return "level " + std::to_string(q); }

// peels `count` binders off an eta-long normal form, recording their types
Term peel_binders(const Term& nf, int count, Context& ctx) {
  Term body = nf;
  for (int i = 0; i < count; ++i) {
    if (body.tag() != Term::Tag::Lam)
      throw invariant_error("defining term lost its binder shape");
    ctx.push_back(body.arg_type());
    body = body.body();
  }
  return body;
}

// idempotent power on raw endofunction tables (same index/period scheme
// as omega_element, but nothing is ever encoded as an element)
std::vector<std::int64_t> omega_table(const std::vector<std::int64_t>& t) {
  std::vector<std::vector<std::int64_t>> powers{t};
  std::map<std::vector<std::int64_t>, int> seen{{t, 1}};
  for (;;) {
    std::vector<std::int64_t> next(t.size());
    for (std::size_t x = 0; x < t.size(); ++x)
      next[x] = powers.back()[static_cast<std::size_t>(t[x])];
    auto it = seen.find(next);
    if (it == seen.end()) {
      seen.emplace(next, static_cast<int>(powers.size()) + 1);
      powers.push_back(std::move(next));
      continue;
    }
    int i = it->second;
    int p = static_cast<int>(powers.size()) + 1 - i;
    int m = p * ((i + p - 1) / p);
    return powers[static_cast<std::size_t>(m - 1)];
  }
}

}  // namespace

//// evidence /////////////////////////////////////////////////////////////

Evidence Evidence::with_witness(Term t) {
  Evidence e;
  e.kind = Kind::Witness;
  e.witness = std::move(t);
  return e;
}

Evidence Evidence::certified() {
  Evidence e;
  e.kind = Kind::Certified;
  return e;
}

Evidence Evidence::deferred() { return Evidence{}; }

//// approximant //////////////////////////////////////////////////////////

Approximant::Approximant(Type type, int k, std::vector<Element> components,
                         std::vector<Evidence> evidence, Origin origin)
    : type_(std::move(type)), k_(k), components_(std::move(components)),
      evidence_(std::move(evidence)), origin_(std::move(origin)) {}

Approximant Approximant::make(Type type, std::vector<Element> components,
                              std::vector<Evidence> evidence,
                              const Config& cfg) {
  if (components.empty())
    throw error("an approximant needs at least one component");
  if (evidence.size() != components.size())
    throw error("got " + std::to_string(evidence.size()) +
                " evidence entries for " + std::to_string(components.size()) +
                " components");
  int k = static_cast<int>(components.size());
  for (int q = 1; q <= k; ++q) {
    const Element& x = components[static_cast<std::size_t>(q - 1)];
    if (x.den() != Den{type, q})
      throw type_error("component at " + level_str(q) + " lies in den(" +
                       to_string(x.type()) + ", q=" + std::to_string(x.q()) +
                       "), expected den(" + to_string(type) + ", q=" +
                       std::to_string(q) + ")");
    const Evidence& ev = evidence[static_cast<std::size_t>(q - 1)];
    switch (ev.kind) {
      case Evidence::Kind::Witness: {
        if (!ev.witness)
          throw invariant_error("witness evidence without a term");
        Type wt = typecheck(*ev.witness);
        if (wt != type)
          throw type_error("witness at " + level_str(q) + " has type " +
                           to_string(wt) + ", expected " + to_string(type));
        if (interpret(*ev.witness, q, {}, {}, cfg) != x)
          throw error("witness at " + level_str(q) +
                      " does not interpret to the component");
        break;
      }
      case Evidence::Kind::Certified: {
        DefSet defs = def_set(type, q, -1, cfg);
        if (!defs.contains(x.index()))
          throw error("component at " + level_str(q) +
                      " carries no definability evidence: index " +
                      x.index().str() + " was not certified definable at " +
                      to_string(type));
        break;
      }
      case Evidence::Kind::Deferred:
        break;
    }
  }
  return Approximant(std::move(type), k, std::move(components),
                     std::move(evidence), Origin{});
}

const Element& Approximant::component(int q) const {
  if (q < 1 || q > k_)
    throw error(level_str(q) + " outside the cutoff range 1.." +
                std::to_string(k_));
  return components_[static_cast<std::size_t>(q - 1)];
}

const Evidence& Approximant::evidence(int q) const {
  if (q < 1 || q > k_)
    throw error(level_str(q) + " outside the cutoff range 1.." +
                std::to_string(k_));
  return evidence_[static_cast<std::size_t>(q - 1)];
}

bool Approximant::operator==(const Approximant& o) const {
  return type_ == o.type_ && k_ == o.k_ && components_ == o.components_;
}

std::int64_t Approximant::church_action(
    int q, const std::vector<std::vector<std::int64_t>>& letter_tables,
    std::int64_t start, const Config& cfg) const {
  int n = church_arity_of(type_);
  if (n < 0)
    throw type_error("church_action needs a family at a Church type, got " +
                     to_string(type_));
  if (static_cast<int>(letter_tables.size()) != n)
    throw error("expected " + std::to_string(n) + " letter tables, got " +
                std::to_string(letter_tables.size()));
  if (q < 1) throw error("level must be positive, got " + std::to_string(q));
  if (start < 0 || start >= q)
    throw error("start value " + std::to_string(start) + " outside [0," +
                std::to_string(q) + ")");
  std::vector<Element> letters;
  letters.reserve(letter_tables.size());
  for (const auto& t : letter_tables) letters.push_back(endo_element(t, q));

  if (q <= k_) {
    Element cur = components_[static_cast<std::size_t>(q - 1)];
    for (const Element& l : letters) cur = apply(cur, l);
    cur = apply(cur, base_element(q, start));
    return static_cast<std::int64_t>(cur.index());
  }

  switch (origin_.kind) {
    case Origin::Kind::Term: {
      // evaluate the defining term's body under the letter environment;
      // a Church normal form only ever applies letters to base values,
      // so no table at level q is materialized
      Context ctx;
      Term body = peel_binders(normalize(*origin_.term), n + 1, ctx);
      std::vector<Element> env = letters;
      env.push_back(base_element(q, start));
      return static_cast<std::int64_t>(interpret(body, q, env, ctx, cfg).index());
    }
    case Origin::Kind::OmegaOfWord: {
      Context ctx;
      Term endo = peel_binders(normalize(*origin_.term), n, ctx);
      Element composite = interpret(endo, q, letters, ctx, cfg);
      std::vector<Nat> big = composite.table(cfg);
      std::vector<std::int64_t> table(big.size());
      for (std::size_t x = 0; x < big.size(); ++x)
        table[x] = static_cast<std::int64_t>(big[x]);
      return omega_table(table)[static_cast<std::size_t>(start)];
    }
    case Origin::Kind::None:
      break;
  }
  throw error("family does not extend beyond its cutoff (" + level_str(q) +
              " > " + std::to_string(k_) + " and no defining term)");
}

//// construction and the category structure //////////////////////////////

Approximant iota(const Term& m, int k, const Config& cfg) {
  if (k < 1)
    throw error("cutoff must be at least 1, got " + std::to_string(k));
  Type type = typecheck(m);
  std::vector<Element> comps;
  std::vector<Evidence> ev;
  comps.reserve(static_cast<std::size_t>(k));
  for (int q = 1; q <= k; ++q) {
    comps.push_back(interpret(m, q, {}, {}, cfg));
    ev.push_back(Evidence::with_witness(m));
  }
  Approximant::Origin origin;
  origin.kind = Approximant::Origin::Kind::Term;
  origin.term = m;
  return Approximant(std::move(type), k, std::move(comps), std::move(ev),
                     std::move(origin));
}

NaturalityReport check_natural(Approximant& theta, const Config& cfg) {
  for (int q = 1; q <= theta.cutoff(); ++q)
    for (int q_to = 1; q_to <= q; ++q_to)
      for (const PartialSurjection& f : all_partial_surjections(q, q_to)) {
        LogicalRelation lifted(f.graph(), cfg);
        if (!lifted.member(theta.type(), theta.component(q),
                           theta.component(q_to)))
          return NaturalityReport{false, q, q_to, f};
      }
  theta.checked_natural_ = true;
  return NaturalityReport{true, 0, 0, std::nullopt};
}

ParametricityReport check_parametric(const Approximant& theta,
                                     const Config& cfg) {
  std::mt19937_64 rng(cfg.seed);
  ParametricityReport report;
  report.exhaustive = true;
  for (int q = 1; q <= theta.cutoff(); ++q)
    for (int q_to = 1; q_to <= theta.cutoff(); ++q_to) {
      auto violates = [&](const Relation& r) {
        LogicalRelation lifted(r, cfg);
        return !lifted.member(theta.type(), theta.component(q),
                              theta.component(q_to));
      };
      if (q <= 2 && q_to <= 2) {
        int cells = q * q_to;
        for (std::uint64_t mask = 0; mask < (1ull << cells); ++mask) {
          Relation r = Relation::empty(q, q_to);
          for (int c = 0; c < cells; ++c)
            if (mask >> c & 1) r.add(c / q_to, c % q_to);
          if (violates(r))
            return ParametricityReport{false, report.exhaustive, q, q_to, r};
        }
      } else {
        report.exhaustive = false;
        for (int s = 0; s < cfg.samples; ++s) {
          Relation r = random_relation(q, q_to, rng);
          if (violates(r)) return ParametricityReport{false, false, q, q_to, r};
        }
      }
    }
  report.ok = true;
  return report;
}

Approximant compose(const Approximant& theta, const Approximant& sigma,
                    const Config& cfg) {
  const Type& ft = theta.type();
  const Type& gt = sigma.type();
  if (ft.tag() != Type::Tag::Arrow || gt.tag() != Type::Tag::Arrow ||
      ft.right() != gt.left())
    throw type_error("cannot compose a family at " + to_string(ft) +
                     " with one at " + to_string(gt));
  if (theta.cutoff() != sigma.cutoff())
    throw error("cutoff mismatch: " + std::to_string(theta.cutoff()) +
                " vs " + std::to_string(sigma.cutoff()));
  int k = theta.cutoff();
  std::vector<Element> comps;
  std::vector<Evidence> ev;
  for (int q = 1; q <= k; ++q) {
    comps.push_back(
        compose_elements(theta.component(q), sigma.component(q), cfg));
    const Evidence& a = theta.evidence(q);
    const Evidence& b = sigma.evidence(q);
    if (a.kind == Evidence::Kind::Witness && b.kind == Evidence::Kind::Witness)
      ev.push_back(Evidence::with_witness(Term::lam(
          ft.left(),
          Term::app(*b.witness, Term::app(*a.witness, Term::var(0))))));
    else if (a.kind != Evidence::Kind::Deferred &&
             b.kind != Evidence::Kind::Deferred)
      ev.push_back(Evidence::certified());
    else
      ev.push_back(Evidence::deferred());
  }
  Approximant::Origin origin;
  if (theta.origin_.kind == Approximant::Origin::Kind::Term &&
      sigma.origin_.kind == Approximant::Origin::Kind::Term) {
    origin.kind = Approximant::Origin::Kind::Term;
    origin.term = Term::lam(
        ft.left(), Term::app(*sigma.origin_.term,
                             Term::app(*theta.origin_.term, Term::var(0))));
  }
  return Approximant(Type::arrow(ft.left(), gt.right()), k, std::move(comps),
                     std::move(ev), std::move(origin));
}

Approximant apply_term_to_approximant(const Term& m, const Approximant& theta,
                                      const Config& cfg) {
  Type mt = typecheck(m);
  if (mt.tag() != Type::Tag::Arrow || mt.left() != theta.type())
    throw type_error("a term of type " + to_string(mt) +
                     " cannot act on a family at " + to_string(theta.type()));
  // evaluating the body under a binding for the argument never lays out
  // the table of [[m]] itself, which the cap may forbid at Church types
  Term nf = normalize(m);
  if (nf.tag() != Term::Tag::Lam)
    throw invariant_error("normal form of an arrow-typed term is not a binder");
  Context ctx{mt.left()};
  int k = theta.cutoff();
  std::vector<Element> comps;
  std::vector<Evidence> ev;
  for (int q = 1; q <= k; ++q) {
    comps.push_back(interpret(nf.body(), q, {theta.component(q)}, ctx, cfg));
    const Evidence& e = theta.evidence(q);
    if (e.kind == Evidence::Kind::Witness)
      ev.push_back(Evidence::with_witness(Term::app(m, *e.witness)));
    else if (e.kind == Evidence::Kind::Certified)
      ev.push_back(Evidence::certified());
    else
      ev.push_back(Evidence::deferred());
  }
  Approximant::Origin origin;
  if (theta.origin_.kind == Approximant::Origin::Kind::Term) {
    origin.kind = Approximant::Origin::Kind::Term;
    origin.term = Term::app(m, *theta.origin_.term);
  }
  return Approximant(mt.right(), k, std::move(comps), std::move(ev),
                     std::move(origin));
}

Approximant apply_approximant(const Approximant& fn, const Approximant& arg,
                              const Config& cfg) {
  (void)cfg;
  const Type& ft = fn.type();
  if (ft.tag() != Type::Tag::Arrow || ft.left() != arg.type())
    throw type_error("a family at " + to_string(ft) +
                     " cannot act on a family at " + to_string(arg.type()));
  if (fn.cutoff() != arg.cutoff())
    throw error("cutoff mismatch: " + std::to_string(fn.cutoff()) + " vs " +
                std::to_string(arg.cutoff()));
  int k = fn.cutoff();
  std::vector<Element> comps;
  std::vector<Evidence> ev;
  for (int q = 1; q <= k; ++q) {
    comps.push_back(apply(fn.component(q), arg.component(q)));
    const Evidence& a = fn.evidence(q);
    const Evidence& b = arg.evidence(q);
    if (a.kind == Evidence::Kind::Witness && b.kind == Evidence::Kind::Witness)
      ev.push_back(
          Evidence::with_witness(Term::app(*a.witness, *b.witness)));
    else if (a.kind != Evidence::Kind::Deferred &&
             b.kind != Evidence::Kind::Deferred)
      ev.push_back(Evidence::certified());
    else
      ev.push_back(Evidence::deferred());
  }
  Approximant::Origin origin;
  if (fn.origin_.kind == Approximant::Origin::Kind::Term &&
      arg.origin_.kind == Approximant::Origin::Kind::Term) {
    origin.kind = Approximant::Origin::Kind::Term;
    origin.term = Term::app(*fn.origin_.term, *arg.origin_.term);
  }
  return Approximant(ft.right(), k, std::move(comps), std::move(ev),
                     std::move(origin));
}

//// the idempotent power /////////////////////////////////////////////////

Element omega_element(const Type& a, int q, const Element& f,
                      const Config& cfg) {
  Den want{Type::arrow(a, a), q};
  if (f.den() != want)
    throw type_error("idempotent power needs an element of den(" +
                     to_string(want.type) + ", q=" + std::to_string(q) +
                     "), got den(" + to_string(f.type()) + ", q=" +
                     std::to_string(f.q()) + ")");
  std::vector<Element> powers{f};
  std::map<Nat, int> seen{{f.index(), 1}};
  for (;;) {
    Element next = compose_elements(powers.back(), f, cfg);
    auto it = seen.find(next.index());
    if (it == seen.end()) {
      seen.emplace(next.index(), static_cast<int>(powers.size()) + 1);
      powers.push_back(std::move(next));
      continue;
    }
    int i = it->second;
    int p = static_cast<int>(powers.size()) + 1 - i;
    int m = p * ((i + p - 1) / p);
    return powers[static_cast<std::size_t>(m - 1)];
  }
}

Approximant omega_approximant(const Type& a, int k, const Config& cfg) {
  if (k < 1)
    throw error("cutoff must be at least 1, got " + std::to_string(k));
  Type endo = Type::arrow(a, a);
  Type full = Type::arrow(endo, endo);
  std::vector<Element> comps;
  std::vector<Evidence> ev;
  for (int q = 1; q <= k; ++q) {
    comps.push_back(tabulate(
        Den{full, q},
        [&](const Element& f) { return omega_element(a, q, f, cfg); }, cfg));
    ev.push_back(Evidence::deferred());
  }
  return Approximant(std::move(full), k, std::move(comps), std::move(ev),
                     Approximant::Origin{});
}

namespace {

// element of den(rem, q) sending remaining letter tuples (f_i..f_n) to the
// idempotent power of `partial` applied to them
Element word_omega_component(const Type& rem, int q, const Element& partial,
                             const Config& cfg) {
  const Type oo = Type::arrow(Type::base(), Type::base());
  if (rem == oo) return omega_element(Type::base(), q, partial, cfg);
  return tabulate(
      Den{rem, q},
      [&](const Element& f) {
        return word_omega_component(rem.right(), q, apply(partial, f), cfg);
      },
      cfg);
}

}  // namespace

Approximant word_omega(const Approximant& theta, const Config& cfg) {
  int n = church_arity_of(theta.type());
  if (n < 0)
    throw type_error("omega power needs a family at a Church type, got " +
                     to_string(theta.type()));
  int k = theta.cutoff();
  std::vector<Element> comps;
  std::vector<Evidence> ev;
  for (int q = 1; q <= k; ++q) {
    comps.push_back(
        word_omega_component(theta.type(), q, theta.component(q), cfg));
    ev.push_back(Evidence::deferred());
  }
  Approximant::Origin origin;
  if (theta.origin_.kind != Approximant::Origin::Kind::None) {
    // the omega power of an omega power is itself, so the underlying word
    // term carries over unchanged in both cases
    origin.kind = Approximant::Origin::Kind::OmegaOfWord;
    origin.term = theta.origin_.term;
  }
  return Approximant(theta.type(), k, std::move(comps), std::move(ev),
                     std::move(origin));
}

//// congruence and separation ////////////////////////////////////////////

bool congruent(int q, const Term& m, const Term& n, const Config& cfg) {
  Type mt = typecheck(m);
  Type nt = typecheck(n);
  if (mt != nt)
    throw type_error("congruence compares terms of one type, got " +
                     to_string(mt) + " and " + to_string(nt));
  return interpret(m, q, {}, {}, cfg) == interpret(n, q, {}, {}, cfg);
}

std::optional<int> separate(const Term& m, const Term& n, int max_q,
                            const Config& cfg) {
  Type mt = typecheck(m);
  Type nt = typecheck(n);
  if (mt != nt)
    throw type_error("separation compares terms of one type, got " +
                     to_string(mt) + " and " + to_string(nt));
  for (int q = 1; q <= max_q; ++q)
    if (interpret(m, q, {}, {}, cfg) != interpret(n, q, {}, {}, cfg))
      return q;
  return std::nullopt;
}

}  // namespace prolam
