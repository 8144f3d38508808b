#include "prolam/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace prolam {

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object())
    throw error(std::string("json: ") + what + " must be an object");
  auto it = j.find(key);
  if (it == j.end())
    throw error(std::string("json: ") + what + " is missing field '" + key +
                "'");
  return *it;
}

std::int64_t int_field(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_number_integer())
    throw error(std::string("json: ") + what + " field '" + key +
                "' must be an integer");
  return v.get<std::int64_t>();
}

std::string string_field(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_string())
    throw error(std::string("json: ") + what + " field '" + key +
                "' must be a string");
  return v.get<std::string>();
}

Nat nat_of_string(const std::string& s, const char* what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
      }))
    throw error(std::string("json: ") + what + " '" + s +
                "' is not a decimal natural number");
  return Nat(s);
}

Nat nat_field(const Json& j, const char* key, const char* what) {
  return nat_of_string(string_field(j, key, what), what);
}

int level_of_key(const std::string& key, const char* what) {
  Nat n = nat_of_string(key, what);
  if (n < 1 || n > 1000000)
    throw error(std::string("json: ") + what + " level '" + key +
                "' is out of range");
  return n.convert_to<int>();
}

}  // namespace

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw error("json: input is not valid JSON");
  return j;
}

//// types ////////////////////////////////////////////////////////////////

Json type_to_json(const Type& t) { return Json(to_string(t)); }

Type type_from_json(const Json& j) {
  if (!j.is_string()) throw error("json: a type must be a string");
  return parse_type(j.get<std::string>());
}

//// terms ////////////////////////////////////////////////////////////////

Json term_to_json(const Term& t) {
  Json j = Json::object();
  switch (t.tag()) {
    case Term::Tag::Var:
      j["tag"] = "var";
      j["index"] = t.index();
      break;
    case Term::Tag::Lam:
      j["tag"] = "lam";
      j["arg"] = type_to_json(t.arg_type());
      j["body"] = term_to_json(t.body());
      break;
    case Term::Tag::App:
      j["tag"] = "app";
      j["fn"] = term_to_json(t.fn());
      j["arg"] = term_to_json(t.arg());
      break;
    case Term::Tag::Pair:
      j["tag"] = "pair";
      j["first"] = term_to_json(t.first());
      j["second"] = term_to_json(t.second());
      break;
    case Term::Tag::Fst:
      j["tag"] = "fst";
      j["sub"] = term_to_json(t.sub());
      break;
    case Term::Tag::Snd:
      j["tag"] = "snd";
      j["sub"] = term_to_json(t.sub());
      break;
    case Term::Tag::Unit:
      j["tag"] = "unit";
      break;
  }
  return j;
}

Term term_from_json(const Json& j) {
  std::string tag = string_field(j, "tag", "a term");
  if (tag == "var") {
    std::int64_t i = int_field(j, "index", "a variable");
    if (i < 0) throw error("json: variable index must be nonnegative");
    return Term::var(static_cast<int>(i));
  }
  if (tag == "lam")
    return Term::lam(type_from_json(field(j, "arg", "a lambda")),
                     term_from_json(field(j, "body", "a lambda")));
  if (tag == "app")
    return Term::app(term_from_json(field(j, "fn", "an application")),
                     term_from_json(field(j, "arg", "an application")));
  if (tag == "pair")
    return Term::pair(term_from_json(field(j, "first", "a pair")),
                      term_from_json(field(j, "second", "a pair")));
  if (tag == "fst") return Term::fst(term_from_json(field(j, "sub", "fst")));
  if (tag == "snd") return Term::snd(term_from_json(field(j, "sub", "snd")));
  if (tag == "unit") return Term::unit();
  throw error("json: unknown term tag '" + tag + "'");
}

//// elements /////////////////////////////////////////////////////////////

Json element_to_json(const Element& x) {
  Json j = Json::object();
  j["type"] = type_to_json(x.type());
  j["q"] = x.q();
  j["index"] = x.index().str();
  return j;
}

Element element_from_json(const Json& j) {
  Type type = type_from_json(field(j, "type", "an element"));
  std::int64_t q = int_field(j, "q", "an element");
  if (q < 1) throw error("json: element level must be at least 1");
  Nat index = nat_field(j, "index", "an element");
  return Element(Den{type, static_cast<int>(q)}, index);
}

Json table_to_json(const Element& x, const Config& cfg) {
  Json arr = Json::array();
  for (const Nat& entry : x.table(cfg)) arr.push_back(entry.str());
  return arr;
}

//// relations ////////////////////////////////////////////////////////////

Json relation_to_json(const Relation& r) {
  Json j = Json::object();
  j["q"] = r.lhs;
  j["q_to"] = r.rhs;
  Json pairs = Json::array();
  for (const auto& [a, b] : r.pairs()) pairs.push_back(Json::array({a, b}));
  j["pairs"] = pairs;
  return j;
}

Relation relation_from_json(const Json& j) {
  std::int64_t lhs = int_field(j, "q", "a relation");
  std::int64_t rhs = int_field(j, "q_to", "a relation");
  if (lhs < 0 || rhs < 0)
    throw error("json: relation sides must be nonnegative");
  Relation r = Relation::empty(lhs, rhs);
  const Json& pairs = field(j, "pairs", "a relation");
  if (!pairs.is_array())
    throw error("json: relation field 'pairs' must be an array");
  for (const Json& p : pairs) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
        !p[1].is_number_integer())
      throw error("json: each relation pair must be [int, int]");
    std::int64_t a = p[0].get<std::int64_t>();
    std::int64_t b = p[1].get<std::int64_t>();
    if (a < 0 || a >= lhs || b < 0 || b >= rhs)
      throw error("json: relation pair (" + std::to_string(a) + ", " +
                  std::to_string(b) + ") is out of range");
    r.add(a, b);
  }
  return r;
}

Json psurj_to_json(const PartialSurjection& f) {
  Json j = Json::object();
  j["q"] = f.lhs;
  j["q_to"] = f.rhs;
  j["map"] = f.map;
  return j;
}

PartialSurjection psurj_from_json(const Json& j) {
  PartialSurjection f;
  f.lhs = int_field(j, "q", "a partial surjection");
  f.rhs = int_field(j, "q_to", "a partial surjection");
  if (f.lhs < 0 || f.rhs < 0)
    throw error("json: partial surjection sides must be nonnegative");
  const Json& map = field(j, "map", "a partial surjection");
  if (!map.is_array())
    throw error("json: partial surjection field 'map' must be an array");
  for (const Json& v : map) {
    if (!v.is_number_integer())
      throw error("json: partial surjection entries must be integers");
    f.map.push_back(v.get<std::int64_t>());
  }
  if (static_cast<std::int64_t>(f.map.size()) != f.lhs || !f.is_valid())
    throw error("json: map is not a partial surjection onto [" +
                std::to_string(f.rhs) + "]");
  return f;
}

//// definable sets ///////////////////////////////////////////////////////

Json def_set_to_json(const DefSet& d) {
  Json j = Json::object();
  j["type"] = type_to_json(d.type);
  j["q"] = d.q;
  j["exact"] = d.exact;
  j["method"] = d.method;
  j["max_size_searched"] = d.max_size_searched;
  Json elems = Json::array();
  for (const Nat& e : d.elements) elems.push_back(e.str());
  j["elements"] = elems;
  Json wit = Json::object();
  for (const auto& [index, term] : d.witnesses)
    wit[index.str()] = term_to_json(term);
  j["witnesses"] = wit;
  return j;
}

DefSet def_set_from_json(const Json& j) {
  DefSet d{type_from_json(field(j, "type", "a definable set")),
           0, false, {}, 0, {}, {}};
  std::int64_t q = int_field(j, "q", "a definable set");
  if (q < 1) throw error("json: definable-set level must be at least 1");
  d.q = static_cast<int>(q);
  const Json& exact = field(j, "exact", "a definable set");
  if (!exact.is_boolean())
    throw error("json: definable-set field 'exact' must be a boolean");
  d.exact = exact.get<bool>();
  d.method = string_field(j, "method", "a definable set");
  d.max_size_searched = static_cast<int>(
      int_field(j, "max_size_searched", "a definable set"));
  const Json& elems = field(j, "elements", "a definable set");
  if (!elems.is_array())
    throw error("json: definable-set field 'elements' must be an array");
  Den den{d.type, d.q};
  for (const Json& e : elems) {
    if (!e.is_string())
      throw error("json: definable-set elements must be decimal strings");
    Nat index = nat_of_string(e.get<std::string>(), "a definable-set element");
    static_cast<void>(Element(den, index));  // range validation
    d.elements.push_back(index);
  }
  std::sort(d.elements.begin(), d.elements.end());
  d.elements.erase(std::unique(d.elements.begin(), d.elements.end()),
                   d.elements.end());
  const Json& wit = field(j, "witnesses", "a definable set");
  if (!wit.is_object())
    throw error("json: definable-set field 'witnesses' must be an object");
  for (auto it = wit.begin(); it != wit.end(); ++it) {
    Nat index = nat_of_string(it.key(), "a witness key");
    if (!d.contains(index))
      throw error("json: witness key '" + it.key() +
                  "' is not among the elements");
    d.witnesses.emplace(index, term_from_json(it.value()));
  }
  return d;
}

//// regular languages ////////////////////////////////////////////////////

Json reglang_to_json(const RegLanguage& lang, const Config& cfg) {
  Den den{lang.type(), lang.q()};
  if (!den.size_fits(cfg.table_cap))
    throw cap_error("serializing a language over [[" + to_string(lang.type()) +
                    "]] at q=" + std::to_string(lang.q()) +
                    " would materialize more than " +
                    std::to_string(cfg.table_cap) + " indices");
  Json j = Json::object();
  j["type"] = type_to_json(lang.type());
  j["q"] = lang.q();
  Json acc = Json::array();
  std::int64_t size = den.size().convert_to<std::int64_t>();
  for (std::int64_t i = 0; i < size; ++i)
    if (lang.accepts(Element(den, i), cfg)) acc.push_back(Nat(i).str());
  j["accepting"] = acc;
  return j;
}

RegLanguage reglang_from_json(const Json& j) {
  Type type = type_from_json(field(j, "type", "a language"));
  std::int64_t q = int_field(j, "q", "a language");
  if (q < 1) throw error("json: language level must be at least 1");
  const Json& acc = field(j, "accepting", "a language");
  if (!acc.is_array())
    throw error("json: language field 'accepting' must be an array");
  Den den{type, static_cast<int>(q)};
  std::vector<Nat> accepting;
  for (const Json& e : acc) {
    if (!e.is_string())
      throw error("json: accepting indices must be decimal strings");
    Nat index = nat_of_string(e.get<std::string>(), "an accepting index");
    static_cast<void>(Element(den, index));  // range validation
    accepting.push_back(index);
  }
  return RegLanguage::of_indices(type, static_cast<int>(q),
                                 std::move(accepting));
}

//// approximants /////////////////////////////////////////////////////////

Json approximant_to_json(const Approximant& theta) {
  Json j = Json::object();
  j["type"] = type_to_json(theta.type());
  j["k"] = theta.cutoff();
  Json comps = Json::object();
  Json wits = Json::object();
  for (int q = 1; q <= theta.cutoff(); ++q) {
    comps[std::to_string(q)] = theta.component(q).index().str();
    const Evidence& ev = theta.evidence(q);
    if (ev.kind == Evidence::Kind::Witness && ev.witness)
      wits[std::to_string(q)] = term_to_json(*ev.witness);
  }
  j["components"] = comps;
  j["witnesses"] = wits;
  return j;
}

Approximant approximant_from_json(const Json& j, const Config& cfg) {
  Type type = type_from_json(field(j, "type", "an approximant"));
  std::int64_t k = int_field(j, "k", "an approximant");
  if (k < 1) throw error("json: approximant cutoff must be at least 1");
  const Json& comps = field(j, "components", "an approximant");
  if (!comps.is_object())
    throw error("json: approximant field 'components' must be an object");
  const Json& wits = field(j, "witnesses", "an approximant");
  if (!wits.is_object())
    throw error("json: approximant field 'witnesses' must be an object");
  for (auto it = comps.begin(); it != comps.end(); ++it)
    level_of_key(it.key(), "a component key");
  std::vector<Element> components;
  std::vector<Evidence> evidence;
  for (int q = 1; q <= static_cast<int>(k); ++q) {
    std::string key = std::to_string(q);
    if (!comps.contains(key))
      throw error("json: approximant is missing component " + key);
    if (!comps[key].is_string())
      throw error("json: approximant components must be decimal strings");
    Nat index = nat_of_string(comps[key].get<std::string>(), "a component");
    components.emplace_back(Den{type, q}, index);
    if (wits.contains(key))
      evidence.push_back(Evidence::with_witness(term_from_json(wits[key])));
    else
      evidence.push_back(Evidence::deferred());
  }
  if (comps.size() != static_cast<std::size_t>(k))
    throw error("json: approximant has components beyond its cutoff");
  for (auto it = wits.begin(); it != wits.end(); ++it) {
    int q = level_of_key(it.key(), "a witness key");
    if (q > k)
      throw error("json: approximant has witnesses beyond its cutoff");
  }
  return Approximant::make(type, std::move(components), std::move(evidence),
                           cfg);
}

//// automata /////////////////////////////////////////////////////////////

Json dfa_to_json(const Dfa& d) {
  Json j = Json::object();
  j["alphabet"] = d.alphabet;
  j["q"] = d.q;
  Json delta = Json::object();
  for (std::size_t a = 0; a < d.alphabet.size(); ++a)
    delta[d.alphabet[a]] = d.delta[a];
  j["delta"] = delta;
  j["q0"] = d.q0;
  Json fin = Json::array();
  for (std::int64_t s : d.final) fin.push_back(s);
  j["final"] = fin;
  return j;
}

Dfa dfa_from_json(const Json& j) {
  Dfa d;
  const Json& alphabet = field(j, "alphabet", "a dfa");
  if (!alphabet.is_array())
    throw error("json: dfa field 'alphabet' must be an array");
  for (const Json& a : alphabet) {
    if (!a.is_string()) throw error("json: dfa letters must be strings");
    d.alphabet.push_back(a.get<std::string>());
  }
  for (std::size_t a = 0; a < d.alphabet.size(); ++a)
    for (std::size_t b = a + 1; b < d.alphabet.size(); ++b)
      if (d.alphabet[a] == d.alphabet[b])
        throw error("json: dfa letter '" + d.alphabet[a] + "' repeats");
  d.q = static_cast<int>(int_field(j, "q", "a dfa"));
  const Json& delta = field(j, "delta", "a dfa");
  if (!delta.is_object())
    throw error("json: dfa field 'delta' must be an object");
  if (delta.size() != d.alphabet.size())
    throw error("json: dfa delta must have exactly one row per letter");
  for (const std::string& letter : d.alphabet) {
    if (!delta.contains(letter))
      throw error("json: dfa delta is missing letter '" + letter + "'");
    const Json& row = delta[letter];
    if (!row.is_array())
      throw error("json: dfa delta rows must be arrays");
    std::vector<std::int64_t> table;
    for (const Json& v : row) {
      if (!v.is_number_integer())
        throw error("json: dfa transitions must be integers");
      table.push_back(v.get<std::int64_t>());
    }
    d.delta.push_back(std::move(table));
  }
  d.q0 = int_field(j, "q0", "a dfa");
  const Json& fin = field(j, "final", "a dfa");
  if (!fin.is_array()) throw error("json: dfa field 'final' must be an array");
  for (const Json& v : fin) {
    if (!v.is_number_integer())
      throw error("json: dfa final states must be integers");
    d.final.insert(v.get<std::int64_t>());
  }
  validate_dfa(d);
  return d;
}

}  // namespace prolam
