#include "doctest.h"

#include "prolam/json_io.hpp"
#include "prolam/profinite.hpp"

#include "test_util.hpp"

#include <random>

using namespace prolam;
using testutil::closed_terms_up_to;

TEST_SUITE_BEGIN("json");

namespace {

const Type O = Type::base();
const Type OO = Type::arrow(Type::base(), Type::base());
const Type OOO = Type::arrow(Type::base(), OO);

Element endo(const std::vector<std::int64_t>& table, int q) {
  return endo_element(table, q);
}

}  // namespace

TEST_CASE("types serialize as concrete-syntax strings") {
  std::vector<Type> corpus = {
      O, OO, OOO, Type::unit(), Type::product(O, OO),
      Type::arrow(Type::product(O, O), Type::unit()),
      church_type(0), church_type(1), church_type(3)};
  for (const Type& t : corpus) {
    Json j = type_to_json(t);
    CHECK(j.is_string());
    CHECK(type_from_json(j) == t);
  }
  CHECK(type_to_json(OO).get<std::string>() == to_string(OO));
  CHECK_THROWS_AS(type_from_json(Json(3)), error);
  CHECK_THROWS_AS(type_from_json(Json("o =>")), error);
}

TEST_CASE("terms serialize as tag trees and round-trip") {
  std::vector<Term> corpus;
  for (const Type& ty : {OO, OOO, Type::arrow(OO, OO)})
    for (const Term& m : closed_terms_up_to(ty, 8)) corpus.push_back(m);
  corpus.push_back(parse_term("\\p:o*o. (snd p, fst p)"));
  corpus.push_back(parse_term("\\x:o. ()"));
  corpus.push_back(church_term({"a", "b"}, "abba"));
  REQUIRE(corpus.size() > 50);
  for (const Term& m : corpus) {
    Json j = term_to_json(m);
    CHECK(term_from_json(j) == m);
    // serialization is deterministic text
    CHECK(term_to_json(m).dump() == j.dump());
  }

  // frozen shape of the identity
  Json id = term_to_json(parse_term("\\x:o. x"));
  CHECK(id["tag"] == "lam");
  CHECK(id["arg"] == "o");
  CHECK(id["body"]["tag"] == "var");
  CHECK(id["body"]["index"] == 0);

  CHECK_THROWS_AS(term_from_json(Json::object({{"tag", "let"}})), error);
  CHECK_THROWS_AS(term_from_json(Json::object({{"tag", "var"}})), error);
  CHECK_THROWS_AS(
      term_from_json(Json::object({{"tag", "var"}, {"index", -1}})), error);
  CHECK_THROWS_AS(term_from_json(Json("x")), error);
}

TEST_CASE("elements carry exact decimal indices") {
  // small: every element of den(o->o, 2)
  for (std::int64_t i = 0; i < 4; ++i) {
    Element x(Den{OO, 2}, i);
    Json j = element_to_json(x);
    CHECK(j["type"] == "o->o");
    CHECK(j["q"] == 2);
    CHECK(j["index"] == std::to_string(i));
    CHECK(element_from_json(j) == x);
  }

  // large: a Church-word element whose index dwarfs any machine word
  Element w = word_element(2, std::vector<int>{0, 1, 0}, 3);
  Json j = element_to_json(w);
  CHECK(element_from_json(j) == w);
  CHECK(j["index"].get<std::string>() == w.index().str());

  CHECK_THROWS_AS(element_from_json(Json::object(
                      {{"type", "o"}, {"q", 0}, {"index", "0"}})),
                  error);
  CHECK_THROWS_AS(element_from_json(Json::object(
                      {{"type", "o"}, {"q", 2}, {"index", "2"}})),
                  error);
  CHECK_THROWS_AS(element_from_json(Json::object(
                      {{"type", "o"}, {"q", 2}, {"index", "-1"}})),
                  error);
  CHECK_THROWS_AS(element_from_json(Json::object(
                      {{"type", "o"}, {"q", 2}, {"index", 1}})),
                  error);
}

TEST_CASE("function tables export as arrays") {
  Element swap = endo({1, 0}, 2);
  Json t = table_to_json(swap);
  REQUIRE(t.is_array());
  REQUIRE(t.size() == 2);
  CHECK(t[0] == "1");
  CHECK(t[1] == "0");
  for (std::int64_t i = 0; i < 27; ++i) {
    Element f(Den{OO, 3}, i);
    Json arr = table_to_json(f);
    std::vector<std::int64_t> expect = endo_table(i, 3);
    REQUIRE(arr.size() == expect.size());
    for (std::size_t k = 0; k < expect.size(); ++k)
      CHECK(arr[k].get<std::string>() == std::to_string(expect[k]));
  }
  CHECK_THROWS_AS(table_to_json(base_element(2, 1)), error);
}

TEST_CASE("relations round-trip as explicit pair lists") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::int64_t l = 1 + static_cast<std::int64_t>(rng() % 4);
    std::int64_t r = 1 + static_cast<std::int64_t>(rng() % 4);
    Relation rel = random_relation(l, r, rng);
    Json j = relation_to_json(rel);
    CHECK(j["q"] == l);
    CHECK(j["q_to"] == r);
    CHECK(relation_from_json(j) == rel);
  }
  Relation diag = Relation::diagonal(3);
  Json j = relation_to_json(diag);
  CHECK(j["pairs"].dump() == "[[0,0],[1,1],[2,2]]");

  Json bad = relation_to_json(diag);
  bad["pairs"].push_back(Json::array({3, 0}));
  CHECK_THROWS_AS(relation_from_json(bad), error);
  bad["pairs"] = Json::array({Json::array({0})});
  CHECK_THROWS_AS(relation_from_json(bad), error);
}

TEST_CASE("partial surjections round-trip and stay valid") {
  for (const PartialSurjection& f : all_partial_surjections(3, 2)) {
    Json j = psurj_to_json(f);
    CHECK(psurj_from_json(j) == f);
  }
  PartialSurjection emb = PartialSurjection::identity_embedding(4, 2);
  CHECK(psurj_from_json(psurj_to_json(emb)) == emb);

  // not surjective onto [2]
  Json bad = Json::object({{"q", 2}, {"q_to", 2}, {"map", {0, 0}}});
  CHECK_THROWS_AS(psurj_from_json(bad), error);
  // wrong length
  bad = Json::object({{"q", 3}, {"q_to", 1}, {"map", {0, 0}}});
  CHECK_THROWS_AS(psurj_from_json(bad), error);
}

TEST_CASE("definable sets round-trip with witnesses") {
  for (const DefSet& d :
       {def_set(OO, 2), def_set(OOO, 2), church_def_set({"a", "b"}, 2)}) {
    Json j = def_set_to_json(d);
    DefSet back = def_set_from_json(j);
    CHECK(back.type == d.type);
    CHECK(back.q == d.q);
    CHECK(back.exact == d.exact);
    CHECK(back.method == d.method);
    CHECK(back.max_size_searched == d.max_size_searched);
    CHECK(back.elements == d.elements);
    REQUIRE(back.witnesses.size() == d.witnesses.size());
    for (const auto& [index, term] : d.witnesses) {
      REQUIRE(back.witnesses.count(index) == 1);
      CHECK(back.witnesses.at(index) == term);
    }
  }

  Json j = def_set_to_json(def_set(OO, 2));
  j["witnesses"]["3999"] = term_to_json(parse_term("\\x:o. x"));
  CHECK_THROWS_AS(def_set_from_json(j), error);
}

TEST_CASE("languages serialize by materializing the accepting set") {
  // an explicit language round-trips to the same accepted elements
  RegLanguage evens = RegLanguage::of_indices(OO, 2, {Nat(0), Nat(2)});
  Json j = reglang_to_json(evens);
  CHECK(j["type"] == "o->o");
  CHECK(j["q"] == 2);
  CHECK(j["accepting"].dump() == R"(["0","2"])");
  RegLanguage back = reglang_from_json(j);
  for (std::int64_t i = 0; i < 4; ++i) {
    Element x(Den{OO, 2}, i);
    CHECK(back.accepts(x) == evens.accepts(x));
  }

  // an evaluation-preimage language flattens to the same membership test
  std::vector<Element> letters = {endo({1, 0}, 2)};
  RegLanguage parity = RegLanguage::eval_preimage(letters, 0, {1});
  RegLanguage flat = reglang_from_json(reglang_to_json(parity));
  Alphabet ab = {"a"};
  for (int len = 0; len <= 4; ++len) {
    std::vector<int> word(static_cast<std::size_t>(len), 0);
    Term m = church_term(ab, word);
    CHECK(flat.member(m) == parity.member(m));
  }

  // boolean structure survives flattening
  RegLanguage inter = lang_inter(evens, lang_complement(
                                            RegLanguage::of_indices(
                                                OO, 2, {Nat(2)})));
  RegLanguage inter_back = reglang_from_json(reglang_to_json(inter));
  for (std::int64_t i = 0; i < 4; ++i) {
    Element x(Den{OO, 2}, i);
    CHECK(inter_back.accepts(x) == inter.accepts(x));
  }

  // a denotation beyond the cap refuses to materialize
  std::vector<Element> big = {endo({1, 2, 0}, 3)};
  RegLanguage deep = RegLanguage::eval_preimage(big, 0, {0});
  CHECK_THROWS_AS(reglang_to_json(deep), cap_error);

  Json bad = reglang_to_json(evens);
  bad["accepting"].push_back("4");
  CHECK_THROWS_AS(reglang_from_json(bad), error);
}

TEST_CASE("approximants round-trip with their witnesses") {
  Approximant theta = iota(church_term({"a", "b"}, "ab"), 3);
  Json j = approximant_to_json(theta);
  CHECK(j["type"] == to_string(church_type(2)));
  CHECK(j["k"] == 3);
  CHECK(j["components"].size() == 3);
  CHECK(j["witnesses"].size() == 3);
  Approximant back = approximant_from_json(j);
  CHECK(back == theta);
  for (int q = 1; q <= 3; ++q) {
    CHECK(back.component(q) == theta.component(q));
    REQUIRE(back.evidence(q).kind == Evidence::Kind::Witness);
    CHECK(*back.evidence(q).witness == *theta.evidence(q).witness);
  }

  // a deferred family keeps an empty witness object
  std::vector<Element> comps;
  std::vector<Evidence> evs;
  for (int q = 1; q <= 2; ++q) {
    comps.push_back(interpret(parse_term("\\x:o.\\y:o. x"), q));
    evs.push_back(Evidence::deferred());
  }
  Approximant def = Approximant::make(OOO, comps, evs);
  Json jd = approximant_to_json(def);
  CHECK(jd["witnesses"].empty());
  Approximant def_back = approximant_from_json(jd);
  CHECK(def_back == def);
  CHECK(def_back.evidence(1).kind == Evidence::Kind::Deferred);

  // certified evidence is not representable: it reloads as deferred
  std::vector<Evidence> cert = {Evidence::certified(), Evidence::certified()};
  Approximant c = Approximant::make(OOO, comps, cert);
  Approximant c_back = approximant_from_json(approximant_to_json(c));
  CHECK(c_back == c);
  CHECK(c_back.evidence(2).kind == Evidence::Kind::Deferred);

  // malformed inputs
  Json missing = approximant_to_json(theta);
  missing["components"].erase("2");
  CHECK_THROWS_AS(approximant_from_json(missing), error);
  Json extra = approximant_to_json(theta);
  extra["components"]["4"] = "0";
  CHECK_THROWS_AS(approximant_from_json(extra), error);
  Json stray = approximant_to_json(theta);
  stray["witnesses"]["4"] = term_to_json(parse_term("\\x:o. x"));
  CHECK_THROWS_AS(approximant_from_json(stray), error);
  // at level 1 every witness collapses to the same point, so the lie has
  // to be planted at a level that can tell words apart
  Json lying = approximant_to_json(theta);
  lying["witnesses"]["2"] = term_to_json(church_term({"a", "b"}, "ba"));
  CHECK_THROWS_AS(approximant_from_json(lying), error);
}

TEST_CASE("dfas round-trip against a frozen shape") {
  Dfa parity;
  parity.alphabet = {"a", "b"};
  parity.q = 2;
  parity.delta = {{1, 0}, {0, 1}};
  parity.q0 = 0;
  parity.final = {1};
  Json j = dfa_to_json(parity);
  CHECK(j.dump() ==
        R"({"alphabet":["a","b"],"delta":{"a":[1,0],"b":[0,1]},"final":[1],"q":2,"q0":0})");
  CHECK(dfa_from_json(j) == parity);

  Json missing = dfa_to_json(parity);
  missing["delta"].erase("b");
  CHECK_THROWS_AS(dfa_from_json(missing), error);
  Json dup = dfa_to_json(parity);
  dup["alphabet"] = {"a", "a"};
  CHECK_THROWS_AS(dfa_from_json(dup), error);
  Json range = dfa_to_json(parity);
  range["delta"]["a"] = {1, 2};
  CHECK_THROWS_AS(dfa_from_json(range), error);
  Json badfinal = dfa_to_json(parity);
  badfinal["final"] = {2};
  CHECK_THROWS_AS(dfa_from_json(badfinal), error);
}

TEST_CASE("json text parsing maps failures onto library errors") {
  Json j = parse_json_text(R"({"tag":"unit"})");
  CHECK(term_from_json(j) == Term::unit());
  CHECK_THROWS_AS(parse_json_text("{not json"), error);
  CHECK_THROWS_AS(parse_json_text(""), error);
}

TEST_SUITE_END();
