#pragma once

// Shared oracles for the test suites.  These are deliberately independent
// re-implementations (single-step reducer, blunt term enumerator) used to
// cross-check the library, so they must not call into the code under test
// beyond the plain Term/Type constructors.

#include "prolam/syntax.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace prolam::testutil {

// single leftmost-outermost reduction step, or nothing if normal
inline std::optional<Term> step(const Term& t) {
  switch (t.tag()) {
    case Term::Tag::Var:
    case Term::Tag::Unit:
      return std::nullopt;
    case Term::Tag::App:
      if (t.fn().tag() == Term::Tag::Lam)
        return shift(substitute(t.fn().body(), 0, shift(t.arg(), 1)), -1);
      if (auto f = step(t.fn())) return Term::app(*f, t.arg());
      if (auto a = step(t.arg())) return Term::app(t.fn(), *a);
      return std::nullopt;
    case Term::Tag::Lam:
      if (auto b = step(t.body())) return Term::lam(t.arg_type(), *b);
      return std::nullopt;
    case Term::Tag::Pair:
      if (auto a = step(t.first())) return Term::pair(*a, t.second());
      if (auto b = step(t.second())) return Term::pair(t.first(), *b);
      return std::nullopt;
    case Term::Tag::Fst:
      if (t.sub().tag() == Term::Tag::Pair) return t.sub().first();
      if (auto s = step(t.sub())) return Term::fst(*s);
      return std::nullopt;
    case Term::Tag::Snd:
      if (t.sub().tag() == Term::Tag::Pair) return t.sub().second();
      if (auto s = step(t.sub())) return Term::snd(*s);
      return std::nullopt;
  }
  return std::nullopt;
}

inline Term small_step_normal(Term t) {
  int fuel = 100000;
  while (auto n = step(t)) {
    t = *n;
    if (--fuel == 0) throw std::runtime_error("oracle out of fuel");
  }
  return t;
}

// enumerator of ALL well-typed terms (redexes included); application
// argument types come from a fixed pool so the space is finite
inline void enum_terms(const Context& ctx, const Type& ty, int size,
                       const std::vector<Type>& pool, std::vector<Term>& out) {
  if (size <= 0) return;
  if (size == 1) {
    for (int i = 0; i < static_cast<int>(ctx.size()); ++i)
      if (ctx[ctx.size() - 1 - i] == ty) out.push_back(Term::var(i));
  }
  if (ty.tag() == Type::Tag::Arrow && size >= 2) {
    Context inner = ctx;
    inner.push_back(ty.left());
    std::vector<Term> bodies;
    enum_terms(inner, ty.right(), size - 1, pool, bodies);
    for (const Term& b : bodies) out.push_back(Term::lam(ty.left(), b));
  }
  for (const Type& argty : pool) {
    Type fnty = Type::arrow(argty, ty);
    for (int fs = 1; fs <= size - 2; ++fs) {
      std::vector<Term> fns, args;
      enum_terms(ctx, fnty, fs, pool, fns);
      if (fns.empty()) continue;
      enum_terms(ctx, argty, size - 1 - fs, pool, args);
      for (const Term& f : fns)
        for (const Term& a : args) out.push_back(Term::app(f, a));
    }
  }
}

inline std::vector<Term> closed_terms_up_to(const Type& ty, int max_size) {
  std::vector<Type> pool = {Type::base(),
                            Type::arrow(Type::base(), Type::base())};
  std::vector<Term> out;
  for (int s = 1; s <= max_size; ++s) enum_terms({}, ty, s, pool, out);
  return out;
}

// all words over {0..n-1} of length <= max_len, shortlex order
inline std::vector<std::vector<int>> all_words(int n, int max_len) {
  std::vector<std::vector<int>> out = {{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (int l = 0; l < n; ++l) {
        auto w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

}  // namespace prolam::testutil
