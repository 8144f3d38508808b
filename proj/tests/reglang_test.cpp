#include "doctest.h"
#include "prolam/reglang.hpp"
#include "test_util.hpp"

#include <random>

using namespace prolam;
using testutil::closed_terms_up_to;

namespace {
const Type o = Type::base();
const Type oo = Type::arrow(o, o);
const Type ooo = Type::arrow(o, oo);

Element letter(const std::vector<std::int64_t>& table, int q) {
  return Element(Den{oo, q}, endo_index(table, q));
}

RegLanguage random_language(const Type& ty, int q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto size = den_size(ty, q).convert_to<std::int64_t>();
  std::vector<Nat> accepting;
  for (std::int64_t i = 0; i < size; ++i)
    if (rng() & 1) accepting.push_back(Nat(i));
  return RegLanguage::of_indices(ty, q, std::move(accepting));
}

std::vector<int> repeat_a(int k) { return std::vector<int>(k, 0); }
}  // namespace

TEST_SUITE_BEGIN("reglang");

TEST_CASE("membership at explicit accepting sets") {
  RegLanguage all = RegLanguage::everything(ooo, 2);
  RegLanguage none = RegLanguage::empty(ooo, 2);
  Term p1 = parse_term("\\x:o. \\y:o. x");
  Term p2 = parse_term("\\x:o. \\y:o. y");
  CHECK(all.member(p1));
  CHECK(all.member(p2));
  CHECK(!none.member(p1));

  RegLanguage proj1 = RegLanguage::atom(ooo, 2, interpret(p1, 2));
  CHECK(proj1.member(p1));
  CHECK(!proj1.member(p2));
  // membership is invariant under reduction
  CHECK(proj1.member(parse_term("(\\f:o->o->o. f) (\\x:o. \\y:o. x)")));
}

TEST_CASE("membership only sees the interpretation, never the syntax") {
  RegLanguage proj1 =
      RegLanguage::atom(ooo, 2, interpret(parse_term("\\x:o. \\y:o. x"), 2));
  for (const Term& t : closed_terms_up_to(ooo, 8)) {
    CHECK(proj1.member(t) == proj1.member(normalize(t)));
    CHECK(proj1.member(t) ==
          (interpret(t, 2) == interpret(parse_term("\\x:o. \\y:o. x"), 2)));
  }
}

TEST_CASE("evaluation preimages agree with direct word runs") {
  // two states, a fixes the state, b flips it; accept in state 1
  std::vector<std::vector<std::int64_t>> tables = {{0, 1}, {1, 0}};
  RegLanguage L = RegLanguage::eval_preimage(
      {letter(tables[0], 2), letter(tables[1], 2)}, 0, {1});
  CHECK(L.type() == church_type(2));
  for (const auto& w : testutil::all_words(2, 6)) {
    std::int64_t final_state = word_action(2, tables, w)[0];
    CHECK(L.member(church_term({"a", "b"}, w)) == (final_state == 1));
  }
}

TEST_CASE("atoms partition the enumerated terms") {
  auto den = den_size(ooo, 2).convert_to<std::int64_t>();
  std::vector<RegLanguage> atoms;
  for (std::int64_t x = 0; x < den; ++x)
    atoms.push_back(RegLanguage::atom(ooo, 2, Element(Den{ooo, 2}, x)));
  std::set<std::int64_t> hit;
  for (const Term& t : closed_terms_up_to(ooo, 8)) {
    int inside = 0;
    for (std::int64_t x = 0; x < den; ++x)
      if (atoms[static_cast<std::size_t>(x)].member(t)) {
        ++inside;
        hit.insert(x);
      }
    CHECK(inside == 1);
  }
  // the atoms with members are exactly the definable ones
  CHECK(hit == std::set<std::int64_t>{10, 12});
}

TEST_CASE("boolean structure") {
  RegLanguage l1 = random_language(ooo, 2, 11);
  RegLanguage l2 = random_language(ooo, 2, 22);
  RegLanguage full = RegLanguage::everything(ooo, 2);
  auto corpus = closed_terms_up_to(ooo, 9);
  REQUIRE(corpus.size() >= 100);
  for (const Term& t : corpus) {
    CHECK(lang_union(l1, lang_complement(l1)).member(t));
    CHECK(full.member(t));
    // De Morgan, both directions
    CHECK(lang_complement(lang_union(l1, l2)).member(t) ==
          lang_inter(lang_complement(l1), lang_complement(l2)).member(t));
    CHECK(lang_complement(lang_inter(l1, l2)).member(t) ==
          lang_union(lang_complement(l1), lang_complement(l2)).member(t));
    CHECK(lang_union(l1, l2).member(t) == (l1.member(t) || l2.member(t)));
    CHECK(lang_inter(l1, l2).member(t) == (l1.member(t) && l2.member(t)));
  }
  Term p1 = parse_term("\\x:o. \\y:o. x");
  Term p2 = parse_term("\\x:o. \\y:o. y");
  RegLanguage both = lang_inter(RegLanguage::atom(ooo, 2, interpret(p1, 2)),
                                RegLanguage::atom(ooo, 2, interpret(p2, 2)));
  CHECK(!both.member(p1));
  CHECK(!both.member(p2));
  CHECK_THROWS_AS(lang_union(l1, random_language(ooo, 3, 1)), error);
}

TEST_CASE("embedding into a larger level preserves membership") {
  for (int q_from = 1; q_from <= 2; ++q_from)
    for (int q_to = q_from + 1; q_to <= 3; ++q_to)
      for (std::uint64_t seed : {7u, 19u}) {
        RegLanguage L = random_language(ooo, q_from, seed);
        RegLanguage up = L.embed(q_to);
        CHECK(up.q() == q_to);
        for (const Term& t : closed_terms_up_to(ooo, 8))
          CHECK(up.member(t) == L.member(t));
      }
  // the lifted projection atom contains the projection one level up
  Term p1 = parse_term("\\x:o. \\y:o. x");
  RegLanguage up = RegLanguage::atom(ooo, 2, interpret(p1, 2)).embed(3);
  CHECK(up.accepts(interpret(p1, 3)));
  DefSet d3 = def_set(ooo, 3);
  auto atoms = up.normalized_atoms(d3);
  REQUIRE(atoms.size() == 1);
  CHECK(atoms[0] == interpret(p1, 3).index());
  CHECK_THROWS_AS(up.embed(2), error);
  // everything stays everything on definables
  CHECK(RegLanguage::everything(ooo, 2).embed(3).normalized_atoms(d3).size() ==
        d3.elements.size());
}

TEST_CASE("embedding a Church-type language beyond the cap") {
  // den(church(1), 3) = 27^27 cannot be materialized; membership beyond the
  // cap goes through the relational search against level 2
  RegLanguage one_iter =
      RegLanguage::atom(church_type(1), 2, word_element(1, {0}, 2));
  RegLanguage up = one_iter.embed(3);
  for (int k = 0; k <= 5; ++k) {
    bool expect = (k % 2 == 1);  // iteration functionals have period 2 here
    CHECK(up.member(church_term({"a"}, repeat_a(k))) == expect);
    CHECK(one_iter.member(church_term({"a"}, repeat_a(k))) == expect);
  }
}

TEST_CASE("intersection across different recognizing levels") {
  for (int q1 = 1; q1 <= 2; ++q1)
    for (int q2 = 1; q2 <= 2; ++q2) {
      CHECK(coproduct_first(q1, q2).is_valid());
      CHECK(coproduct_second(q1, q2).is_valid());
    }
  RegLanguage l1 = random_language(ooo, 2, 5);
  RegLanguage full2 = RegLanguage::everything(ooo, 2);
  RegLanguage meet = intersect_across(l1, full2);
  CHECK(meet.q() == 4);
  for (const Term& t : closed_terms_up_to(ooo, 8))
    CHECK(meet.member(t) == l1.member(t));

  Term p1 = parse_term("\\x:o. \\y:o. x");
  Term p2 = parse_term("\\x:o. \\y:o. y");
  RegLanguage clash =
      intersect_across(RegLanguage::atom(ooo, 2, interpret(p1, 2)),
                       RegLanguage::atom(ooo, 2, interpret(p2, 2)));
  DefSet d4 = def_set(ooo, 4);
  CHECK(clash.normalized_atoms(d4).empty());
  for (const Term& t : closed_terms_up_to(ooo, 8)) CHECK(!clash.member(t));

  RegLanguage l2 = random_language(ooo, 2, 31);
  RegLanguage both = intersect_across(l1, l2);
  for (const Term& t : closed_terms_up_to(ooo, 8))
    CHECK(both.member(t) == (l1.member(t) && l2.member(t)));
}

TEST_CASE("language equality goes through definable atoms") {
  Term p1 = parse_term("\\x:o. \\y:o. x");
  Term p2 = parse_term("\\x:o. \\y:o. y");
  RegLanguage a1 = RegLanguage::atom(ooo, 2, interpret(p1, 2));
  RegLanguage a2 = RegLanguage::atom(ooo, 2, interpret(p2, 2));

  auto same = same_language(a1, a1.embed(3));
  CHECK(same.equal_on_definables);
  CHECK(same.certified);
  CHECK(!same_language(a1, a2).equal_on_definables);

  // intensionally different trees, one language
  RegLanguage unioned = lang_union(a1, a2);
  RegLanguage listed = RegLanguage::of_indices(ooo, 2, {Nat(10), Nat(12)});
  CHECK(same_language(unioned, listed).equal_on_definables);

  // a type whose definable set is only a lower bound is not certified
  Type pt = Type::arrow(Type::product(o, o), o);
  auto weak = same_language(RegLanguage::everything(pt, 2),
                            RegLanguage::everything(pt, 2));
  CHECK(weak.equal_on_definables);
  CHECK(!weak.certified);
}

TEST_CASE("construction and use reject mismatched frames") {
  CHECK_THROWS_AS(RegLanguage::atom(ooo, 2, interpret(parse_term("\\x:o. x"), 2)),
                  error);
  CHECK_THROWS_AS(RegLanguage::of_indices(oo, 2, {Nat(4)}), error);  // den = 4
  CHECK_THROWS_AS(RegLanguage::everything(ooo, 2).member(parse_term("\\x:o. x")),
                  type_error);
  CHECK_THROWS_AS(RegLanguage::eval_preimage({letter({0, 1}, 2)}, 2, {0}),
                  error);
  CHECK_THROWS_AS(
      RegLanguage::eval_preimage({letter({0, 1}, 2), letter({0, 1, 2}, 3)}, 0,
                                 {0}),
      error);
}

TEST_SUITE_END();
