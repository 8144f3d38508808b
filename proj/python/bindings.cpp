// Python module exposing the main library operations.  Structured values
// cross the boundary as the same stable JSON strings the command line
// speaks, so Python callers compose with files produced by either side.

#include "prolam/json_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;

namespace {

using namespace prolam;

Config config_for(int budget, std::uint64_t seed, int samples) {
  Config cfg;
  if (budget > 0) cfg.term_budget = budget;
  cfg.seed = seed;
  cfg.samples = samples;
  return cfg;
}

Term term_of(const std::string& src) { return parse_term(src); }

std::string check(const std::string& src) {
  return to_string(typecheck(term_of(src)));
}

std::string normalize_text(const std::string& src) {
  Term m = term_of(src);
  typecheck(m);
  return to_string(normalize(m));
}

std::string interp_index(const std::string& src, int q) {
  return interpret(term_of(src), q).index().str();
}

std::vector<std::string> interp_table(const std::string& src, int q) {
  Element x = interpret(term_of(src), q);
  std::vector<std::string> out;
  for (const Nat& entry : x.table()) out.push_back(entry.str());
  return out;
}

std::string def_set_json(const std::string& type, int q, int budget) {
  return def_set_to_json(def_set(parse_type(type), q, budget)).dump();
}

std::optional<int> separate_terms(const std::string& m, const std::string& n,
                                  int max_q) {
  return separate(term_of(m), term_of(n), max_q);
}

std::string church(const std::string& alphabet, const std::string& word) {
  Alphabet a;
  for (char c : alphabet) a.push_back(std::string(1, c));
  return to_string(church_term(a, word));
}

std::string word_of_church_text(const std::string& src,
                                const std::string& alphabet) {
  Alphabet a;
  for (char c : alphabet) a.push_back(std::string(1, c));
  return word_string(a, word_of_church(term_of(src), a));
}

std::string iota_json(const std::string& src, int k) {
  return approximant_to_json(iota(term_of(src), k)).dump();
}

std::string check_natural_json(const std::string& approx) {
  Approximant theta = approximant_from_json(parse_json_text(approx));
  NaturalityReport r = check_natural(theta);
  Json j{{"ok", r.ok}};
  if (!r.ok) {
    j["q"] = r.q;
    j["q_to"] = r.q_to;
    j["f"] = psurj_to_json(*r.f);
  }
  return j.dump();
}

std::string check_parametric_json(const std::string& approx, int samples,
                                  std::uint64_t seed) {
  Config cfg = config_for(-1, seed, samples);
  Approximant theta = approximant_from_json(parse_json_text(approx), cfg);
  ParametricityReport r = check_parametric(theta, cfg);
  Json j{{"ok", r.ok}, {"exhaustive", r.exhaustive}};
  if (!r.ok) {
    j["q"] = r.q;
    j["q_to"] = r.q_to;
    j["r"] = relation_to_json(*r.r);
  }
  return j.dump();
}

std::string compose_json(const std::string& f, const std::string& g) {
  return approximant_to_json(
             compose(approximant_from_json(parse_json_text(f)),
                     approximant_from_json(parse_json_text(g))))
      .dump();
}

std::string omega_json(const std::string& type, int k) {
  return approximant_to_json(omega_approximant(parse_type(type), k)).dump();
}

std::string word_omega_json(const std::string& approx) {
  return approximant_to_json(
             word_omega(approximant_from_json(parse_json_text(approx))))
      .dump();
}

std::string lang_of_dfa_json(const std::string& dfa) {
  Dfa d = dfa_from_json(parse_json_text(dfa));
  return reglang_to_json(language_of_dfa_as_reg(d)).dump();
}

bool lang_member(const std::string& lang, const std::string& src) {
  return reglang_from_json(parse_json_text(lang)).member(term_of(src));
}

std::pair<std::int64_t, bool> dfa_run_word(const std::string& dfa,
                                           const std::string& word) {
  Dfa d = dfa_from_json(parse_json_text(dfa));
  std::int64_t state = run(d, word);
  return {state, d.final.count(state) > 0};
}

std::pair<std::int64_t, bool> dfa_accepts_term(const std::string& dfa,
                                               const std::string& src) {
  Dfa d = dfa_from_json(parse_json_text(dfa));
  Element x = interpret(term_of(src), d.q);
  std::int64_t state = eval_church(d, x);
  return {state, d.final.count(state) > 0};
}

std::string monoid_json(const std::string& dfa) {
  MonoidPresentation m = transition_monoid(dfa_from_json(parse_json_text(dfa)));
  Json j;
  j["size"] = m.size();
  j["degree"] = m.degree;
  j["elements"] = m.elements;
  j["unit"] = m.unit;
  j["letter_of"] = m.letter_of;
  j["mult"] = m.mult;
  j["reps"] = m.reps;
  return j.dump();
}

std::int64_t proword_level(const std::string& approx, const std::string& dfa) {
  Approximant theta = approximant_from_json(parse_json_text(approx));
  MonoidPresentation m =
      transition_monoid(dfa_from_json(parse_json_text(dfa)));
  return proword_level_of_approximant(theta, m);
}

}  // namespace

PYBIND11_MODULE(_prolam, m) {
  m.doc() =
      "finite standard model of the simply typed lambda-calculus: "
      "interpretation, definability, term languages, profinite "
      "approximants, and the Church-encoding automata bridge";

  py::register_exception<error>(m, "Error", PyExc_RuntimeError);

  m.def("check", &check, py::arg("term"),
        "typecheck a closed term, returning its type");
  m.def("normalize", &normalize_text, py::arg("term"),
        "beta-normal eta-long form, concrete syntax");
  m.def("interp", &interp_index, py::arg("term"), py::arg("q"),
        "interpret a closed term; the element index as a decimal string");
  m.def("interp_table", &interp_table, py::arg("term"), py::arg("q"),
        "the function table of an interpreted arrow-type term");
  m.def("def_set_json", &def_set_json, py::arg("type"), py::arg("q"),
        py::arg("budget") = -1,
        "definable elements of a denotation, as JSON");
  m.def("separate", &separate_terms, py::arg("m"), py::arg("n"),
        py::arg("max_q") = 3,
        "least level distinguishing two closed terms, or None");
  m.def("church", &church, py::arg("alphabet"), py::arg("word"),
        "the Church encoding of a word over single-character letters");
  m.def("word_of_church", &word_of_church_text, py::arg("term"),
        py::arg("alphabet"), "read a word back off a Church-type term");
  m.def("iota_json", &iota_json, py::arg("term"), py::arg("k") = 3,
        "interpret at every level up to a cutoff; approximant JSON");
  m.def("check_natural_json", &check_natural_json, py::arg("approximant"),
        "restriction compatibility verdict, as JSON");
  m.def("check_parametric_json", &check_parametric_json,
        py::arg("approximant"), py::arg("samples") = 512, py::arg("seed") = 0,
        "relational invariance verdict, as JSON");
  m.def("compose_json", &compose_json, py::arg("f"), py::arg("g"),
        "pointwise composition of function-type approximants");
  m.def("omega_json", &omega_json, py::arg("type"), py::arg("k") = 3,
        "the idempotent-power family at (A->A)->(A->A)");
  m.def("word_omega_json", &word_omega_json, py::arg("approximant"),
        "idempotent power of a Church-type family");
  m.def("lang_of_dfa_json", &lang_of_dfa_json, py::arg("dfa"),
        "the term language a DFA recognizes, as JSON");
  m.def("lang_member", &lang_member, py::arg("language"), py::arg("term"),
        "does the closed term belong to the language");
  m.def("dfa_run", &dfa_run_word, py::arg("dfa"), py::arg("word"),
        "(final state, accepted) after reading a word");
  m.def("dfa_accepts_term", &dfa_accepts_term, py::arg("dfa"),
        py::arg("term"),
        "(state, accepted) for a Church-type term evaluated in the model");
  m.def("monoid_json", &monoid_json, py::arg("dfa"),
        "the transition monoid of a DFA, as JSON");
  m.def("proword_level", &proword_level, py::arg("approximant"),
        py::arg("dfa"),
        "evaluate an approximant at a DFA's transition-monoid level");

  m.attr("__version__") = "0.1.0";
}
