#pragma once

// JSON import/export for every value the library trades in.  Formats are
// stable so golden files stay byte-identical across runs:
//
//   type        concrete-syntax string            "(o->o)->o->o"
//   term        tree of {tag, children}           {"tag":"lam","arg":"o",...}
//   element     {type, q, index}                  index as a decimal string
//   relation    {q, q_to, pairs}
//   psurj       {q, q_to, map}                    -1 marks undefined
//   def set     {type, q, exact, method, max_size_searched, elements,
//                witnesses}
//   language    {type, q, accepting}              materialized; cap-guarded
//   approximant {type, k, components, witnesses}  keyed by level
//   dfa         {alphabet, q, delta, q0, final}
//
// Indices that can exceed machine words (element indices, accepting sets)
// are decimal strings; small structural numbers (levels, states) are JSON
// integers.  Importers validate everything they accept and throw `error`
// subtypes on malformed input, so a bad file never produces a bad value.

#include "prolam/automata.hpp"

#include "json.hpp"

namespace prolam {

using Json = nlohmann::json;

// parse failures surface as prolam::error instead of nlohmann's exception
Json parse_json_text(const std::string& text);

Json type_to_json(const Type& t);
Type type_from_json(const Json& j);

Json term_to_json(const Term& t);
Term term_from_json(const Json& j);

Json element_to_json(const Element& x);
Element element_from_json(const Json& j);
// the function-table view as an array of decimal strings
Json table_to_json(const Element& x, const Config& cfg = {});

Json relation_to_json(const Relation& r);
Relation relation_from_json(const Json& j);

Json psurj_to_json(const PartialSurjection& f);
PartialSurjection psurj_from_json(const Json& j);

Json def_set_to_json(const DefSet& d);
DefSet def_set_from_json(const Json& j);

// materializes the accepting set, so the denotation must fit the cap
Json reglang_to_json(const RegLanguage& lang, const Config& cfg = {});
RegLanguage reglang_from_json(const Json& j);

// evidence beyond stored witness terms is not representable in the
// format: certified-only levels reload as deferred
Json approximant_to_json(const Approximant& theta);
Approximant approximant_from_json(const Json& j, const Config& cfg = {});

Json dfa_to_json(const Dfa& d);
Dfa dfa_from_json(const Json& j);

}  // namespace prolam
