// Command-line front end: parsing and typechecking, finite-model
// interpretation, definability reports, regular-language operations,
// profinite approximant checks, and the DFA bridge.  Every subcommand has
// a --json mode whose single-line output is the stable machine contract;
// human mode is presentation only.
//
// Exit codes: 0 success, 1 domain error (parse/type/cap/validation),
// 2 usage error.

#include "prolam/json_io.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace prolam;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot read file '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// term arguments are inline source unless they name an existing file
Term load_term(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return parse_term(slurp(arg));
  return parse_term(arg);
}

Json load_json(const std::string& path) {
  return parse_json_text(slurp(path));
}

Alphabet alphabet_of(const std::string& letters) {
  if (letters.empty()) throw usage_error("the alphabet must be nonempty");
  Alphabet a;
  for (char c : letters) {
    std::string letter(1, c);
    for (const std::string& seen : a)
      if (seen == letter)
        throw usage_error("alphabet letter '" + letter + "' repeats");
    a.push_back(letter);
  }
  return a;
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

std::string table_text(const Element& x, const Config& cfg) {
  std::string out = "[";
  bool first = true;
  for (const Nat& entry : x.table(cfg)) {
    if (!first) out += ", ";
    out += entry.str();
    first = false;
  }
  return out + "]";
}

bool table_fits(const Element& x, const Config& cfg) {
  return x.type().tag() == Type::Tag::Arrow &&
         Den{x.type().left(), x.q()}.size_fits(cfg.table_cap);
}

void print_element(const Element& x, const Config& cfg) {
  std::cout << "element " << x.index().str() << " of [[" << to_string(x.type())
            << "]] at q=" << x.q() << "\n";
  if (table_fits(x, cfg)) std::cout << "table: " << table_text(x, cfg) << "\n";
}

Json element_report(const Element& x, const Config& cfg) {
  Json j = element_to_json(x);
  if (table_fits(x, cfg)) j["table"] = table_to_json(x, cfg);
  return j;
}

std::string evidence_text(const Evidence& ev) {
  switch (ev.kind) {
    case Evidence::Kind::Witness:
      return "witness " + to_string(*ev.witness);
    case Evidence::Kind::Certified:
      return "certified";
    case Evidence::Kind::Deferred:
      return "deferred";
  }
  return "";
}

void print_approximant(const Approximant& theta) {
  std::cout << "approximant at [[" << to_string(theta.type())
            << "]] with cutoff " << theta.cutoff() << "\n";
  for (int q = 1; q <= theta.cutoff(); ++q)
    std::cout << "  q=" << q << ": index "
              << theta.component(q).index().str() << " ("
              << evidence_text(theta.evidence(q)) << ")\n";
}

void emit_approximant(const Approximant& theta, bool json_out) {
  if (json_out)
    emit(approximant_to_json(theta));
  else
    print_approximant(theta);
}

void print_language(const RegLanguage& lang, const Config& cfg) {
  Json j = reglang_to_json(lang, cfg);
  std::cout << "language at [[" << to_string(lang.type())
            << "]] q=" << lang.q() << " accepting " << j["accepting"].size()
            << " of " << Den{lang.type(), lang.q()}.size().str()
            << " indices: " << j["accepting"].dump() << "\n";
}

void emit_language(const RegLanguage& lang, bool json_out,
                   const Config& cfg) {
  if (json_out)
    emit(reglang_to_json(lang, cfg));
  else
    print_language(lang, cfg);
}

std::string word_text(const MonoidPresentation& m, const std::vector<int>& w) {
  if (w.empty()) return "1";
  std::string out;
  for (int letter : w) out += m.alphabet[static_cast<std::size_t>(letter)];
  return out;
}

int require_q(int q) {
  if (q < 1) throw usage_error("--q is required and must be at least 1");
  return q;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "finite standard model of the simply typed lambda-calculus:\n"
      "terms, definability, regular languages, profinite approximants,\n"
      "and the Church-encoding bridge to finite automata"};
  app.require_subcommand(1);

  int q = 0;
  int k = 0;
  std::string type_str;
  std::uint64_t seed = 0;
  int samples = 512;
  int budget = -1;
  std::int64_t cap = 1 << 20;
  bool json_out = false;
  app.add_option("--q", q, "base cardinality (level) for interpretation");
  app.add_option("--k", k, "approximant cutoff (default 3)");
  app.add_option("--type", type_str, "type argument, concrete syntax");
  app.add_option("--seed", seed, "sampling seed (default 0)");
  app.add_option("--samples", samples,
                 "relation samples per level pair (default 512)");
  app.add_option("--budget", budget,
                 "term-enumeration budget in nodes (default 14)");
  app.add_option("--cap", cap,
                 "largest table the model may materialize (default 2^20)");
  app.add_flag("--json", json_out, "machine-readable single-line output");

  auto make_cfg = [&]() {
    Config cfg;
    cfg.table_cap = cap;
    if (budget > 0) cfg.term_budget = budget;
    if (k > 0) cfg.cutoff = k;
    cfg.seed = seed;
    cfg.samples = samples;
    return cfg;
  };
  auto cutoff = [&]() { return k > 0 ? k : Config{}.cutoff; };

  // ---- check ------------------------------------------------------------

  std::string check_term;
  auto* check = app.add_subcommand(
      "check", "typecheck a closed term: check TERM [--type EXPECTED]");
  check->fallthrough();
  check->add_option("term", check_term, "term source or file")->required();
  check->callback([&] {
    Term m = load_term(check_term);
    Type t = typecheck(m);
    if (!type_str.empty() && t != parse_type(type_str))
      throw type_error("term has type " + to_string(t) + ", expected " +
                       type_str);
    if (json_out)
      emit(Json{{"type", type_to_json(t)}});
    else
      std::cout << to_string(t) << "\n";
  });

  // ---- normalize --------------------------------------------------------

  std::string norm_term;
  auto* norm = app.add_subcommand(
      "normalize", "beta-normal eta-long form: normalize TERM");
  norm->fallthrough();
  norm->add_option("term", norm_term, "term source or file")->required();
  norm->callback([&] {
    Term m = load_term(norm_term);
    Type t = typecheck(m);
    Term nf = normalize(m);
    if (json_out)
      emit(Json{{"type", type_to_json(t)},
                {"term", term_to_json(nf)},
                {"text", to_string(nf)}});
    else
      std::cout << to_string(nf) << "\n";
  });

  // ---- interp -----------------------------------------------------------

  std::string interp_term;
  auto* interp_cmd = app.add_subcommand(
      "interp", "interpret a closed term: interp TERM --q Q");
  interp_cmd->fallthrough();
  interp_cmd->add_option("term", interp_term, "term source or file")
      ->required();
  interp_cmd->callback([&] {
    Config cfg = make_cfg();
    Element x = interpret(load_term(interp_term), require_q(q), {}, {}, cfg);
    if (json_out)
      emit(element_report(x, cfg));
    else
      print_element(x, cfg);
  });

  // ---- def --------------------------------------------------------------

  std::string def_church;
  auto* def = app.add_subcommand(
      "def",
      "definable elements: def --type T --q Q [--budget N] | "
      "def --church LETTERS --q Q");
  def->fallthrough();
  def->add_option("--church", def_church,
                  "Church-word closure over these single-character letters");
  def->callback([&] {
    Config cfg = make_cfg();
    if (type_str.empty() == def_church.empty())
      throw usage_error("def needs exactly one of --type or --church");
    DefSet d = def_church.empty()
                   ? def_set(parse_type(type_str), require_q(q), budget, cfg)
                   : church_def_set(alphabet_of(def_church), require_q(q),
                                    cfg);
    if (json_out) {
      emit(def_set_to_json(d));
      return;
    }
    std::cout << "definable elements of [[" << to_string(d.type)
              << "]] at q=" << d.q << ": " << d.elements.size()
              << (d.exact ? " (exact, " : " (lower bound, ") << d.method
              << ")\n";
    for (const Nat& e : d.elements) {
      std::cout << "  " << e.str();
      auto it = d.witnesses.find(e);
      if (it != d.witnesses.end())
        std::cout << ": " << to_string(it->second);
      std::cout << "\n";
    }
  });

  // ---- lang -------------------------------------------------------------

  auto* lang = app.add_subcommand(
      "lang", "regular languages of terms (JSON files)");
  lang->fallthrough();
  lang->require_subcommand(1);

  std::string lm_file, lm_term;
  auto* lang_member = lang->add_subcommand(
      "member", "membership: lang member LANG.json TERM");
  lang_member->fallthrough();
  lang_member->add_option("language", lm_file, "language JSON file")
      ->required();
  lang_member->add_option("term", lm_term, "term source or file")->required();
  lang_member->callback([&] {
    Config cfg = make_cfg();
    RegLanguage l = reglang_from_json(load_json(lm_file));
    bool in = l.member(load_term(lm_term), cfg);
    if (json_out)
      emit(Json{{"member", in}});
    else
      std::cout << (in ? "member" : "not a member") << "\n";
  });

  std::string lop_kind, lop_a, lop_b;
  auto* lang_op = lang->add_subcommand(
      "op",
      "boolean operation: lang op --kind union|inter|complement A.json "
      "[B.json]");
  lang_op->fallthrough();
  lang_op->add_option("--kind", lop_kind, "union, inter, or complement")
      ->required();
  lang_op->add_option("a", lop_a, "first language JSON file")->required();
  lang_op->add_option("b", lop_b, "second language JSON file");
  lang_op->callback([&] {
    Config cfg = make_cfg();
    RegLanguage a = reglang_from_json(load_json(lop_a));
    if (lop_kind == "complement") {
      if (!lop_b.empty())
        throw usage_error("complement takes a single language");
      emit_language(lang_complement(a), json_out, cfg);
      return;
    }
    if (lop_b.empty())
      throw usage_error("'" + lop_kind + "' needs two languages");
    RegLanguage b = reglang_from_json(load_json(lop_b));
    if (lop_kind == "union")
      emit_language(lang_union(a, b), json_out, cfg);
    else if (lop_kind == "inter")
      emit_language(lang_inter(a, b), json_out, cfg);
    else
      throw usage_error("unknown --kind '" + lop_kind +
                        "' (union, inter, complement)");
  });

  std::string lemb_file;
  int lemb_q_to = 0;
  auto* lang_embed = lang->add_subcommand(
      "embed", "raise the level: lang embed LANG.json --q-to Q");
  lang_embed->fallthrough();
  lang_embed->add_option("language", lemb_file, "language JSON file")
      ->required();
  lang_embed->add_option("--q-to", lemb_q_to, "target level")->required();
  lang_embed->callback([&] {
    Config cfg = make_cfg();
    RegLanguage a = reglang_from_json(load_json(lemb_file));
    emit_language(a.embed(lemb_q_to, cfg), json_out, cfg);
  });

  std::string lint_a, lint_b;
  auto* lang_inter_cmd = lang->add_subcommand(
      "intersect",
      "meet across levels at [q1+q2]: lang intersect A.json B.json");
  lang_inter_cmd->fallthrough();
  lang_inter_cmd->add_option("a", lint_a, "first language JSON file")
      ->required();
  lang_inter_cmd->add_option("b", lint_b, "second language JSON file")
      ->required();
  lang_inter_cmd->callback([&] {
    Config cfg = make_cfg();
    RegLanguage a = reglang_from_json(load_json(lint_a));
    RegLanguage b = reglang_from_json(load_json(lint_b));
    emit_language(intersect_across(a, b, cfg), json_out, cfg);
  });

  // ---- pro --------------------------------------------------------------

  auto* pro = app.add_subcommand(
      "pro", "profinite approximants: truncated families with evidence");
  pro->fallthrough();
  pro->require_subcommand(1);

  std::string iota_term, iota_word, iota_alphabet;
  auto* pro_iota = pro->add_subcommand(
      "iota",
      "interpret a term at every level: pro iota TERM [--k K] | "
      "pro iota --word W --alphabet LETTERS [--k K]");
  pro_iota->fallthrough();
  pro_iota->add_option("term", iota_term, "term source or file");
  pro_iota->add_option("--word", iota_word, "word over --alphabet");
  pro_iota->add_option("--alphabet", iota_alphabet,
                       "single-character letters for --word");
  pro_iota->callback([&] {
    Config cfg = make_cfg();
    bool have_word = pro_iota->count("--word") > 0;
    Term m = [&] {
      if (!iota_term.empty()) {
        if (have_word || !iota_alphabet.empty())
          throw usage_error("pro iota takes a term or --word, not both");
        return load_term(iota_term);
      }
      if (!have_word || iota_alphabet.empty())
        throw usage_error("pro iota needs a term or --word with --alphabet");
      return church_term(alphabet_of(iota_alphabet), iota_word);
    }();
    emit_approximant(iota(m, cutoff(), cfg), json_out);
  });

  std::string chknat_file;
  auto* pro_nat = pro->add_subcommand(
      "check-natural",
      "restriction compatibility: pro check-natural APPROX.json");
  pro_nat->fallthrough();
  pro_nat->add_option("approximant", chknat_file, "approximant JSON file")
      ->required();
  pro_nat->callback([&] {
    Config cfg = make_cfg();
    Approximant theta = approximant_from_json(load_json(chknat_file), cfg);
    NaturalityReport r = check_natural(theta, cfg);
    if (json_out) {
      Json j{{"ok", r.ok}};
      if (!r.ok) {
        j["q"] = r.q;
        j["q_to"] = r.q_to;
        j["f"] = psurj_to_json(*r.f);
      }
      emit(j);
    } else if (r.ok) {
      std::cout << "natural: compatible with every restriction up to cutoff "
                << theta.cutoff() << "\n";
    } else {
      std::cout << "naturality fails at [" << r.q << "] ->> [" << r.q_to
                << "] via map " << psurj_to_json(*r.f)["map"].dump() << "\n";
    }
  });

  std::string chkpar_file;
  auto* pro_par = pro->add_subcommand(
      "check-parametric",
      "invariance under relations: pro check-parametric APPROX.json "
      "[--samples N --seed S]");
  pro_par->fallthrough();
  pro_par->add_option("approximant", chkpar_file, "approximant JSON file")
      ->required();
  pro_par->callback([&] {
    Config cfg = make_cfg();
    Approximant theta = approximant_from_json(load_json(chkpar_file), cfg);
    ParametricityReport r = check_parametric(theta, cfg);
    if (json_out) {
      Json j{{"ok", r.ok}, {"exhaustive", r.exhaustive}};
      if (!r.ok) {
        j["q"] = r.q;
        j["q_to"] = r.q_to;
        j["r"] = relation_to_json(*r.r);
      }
      emit(j);
      return;
    }
    if (r.ok)
      std::cout << "parametric ("
                << (r.exhaustive ? "exhaustive" : "sampled") << ")\n";
    else
      std::cout << "parametricity fails between levels " << r.q << " and "
                << r.q_to << " at relation "
                << relation_to_json(*r.r)["pairs"].dump() << "\n";
  });

  std::string comp_f, comp_g;
  auto* pro_comp = pro->add_subcommand(
      "compose", "pointwise composition: pro compose F.json G.json "
                 "(F at A->B, G at B->C)");
  pro_comp->fallthrough();
  pro_comp->add_option("f", comp_f, "first approximant JSON file")
      ->required();
  pro_comp->add_option("g", comp_g, "second approximant JSON file")
      ->required();
  pro_comp->callback([&] {
    Config cfg = make_cfg();
    Approximant f = approximant_from_json(load_json(comp_f), cfg);
    Approximant g = approximant_from_json(load_json(comp_g), cfg);
    emit_approximant(compose(f, g, cfg), json_out);
  });

  auto* pro_omega = pro->add_subcommand(
      "omega",
      "the idempotent-power family at (A->A)->(A->A): pro omega --type A "
      "[--k K]");
  pro_omega->fallthrough();
  pro_omega->callback([&] {
    Config cfg = make_cfg();
    if (type_str.empty()) throw usage_error("pro omega needs --type");
    emit_approximant(omega_approximant(parse_type(type_str), cutoff(), cfg),
                     json_out);
  });

  std::string womega_file;
  auto* pro_womega = pro->add_subcommand(
      "word-omega",
      "idempotent power of a Church-type family: pro word-omega APPROX.json");
  pro_womega->fallthrough();
  pro_womega->add_option("approximant", womega_file, "approximant JSON file")
      ->required();
  pro_womega->callback([&] {
    Config cfg = make_cfg();
    Approximant theta = approximant_from_json(load_json(womega_file), cfg);
    emit_approximant(word_omega(theta, cfg), json_out);
  });

  std::string sep_m, sep_n;
  int max_q = 3;
  auto* pro_sep = pro->add_subcommand(
      "separate",
      "least level telling two terms apart: pro separate M N [--max-q Q]");
  pro_sep->fallthrough();
  pro_sep->add_option("m", sep_m, "first term source or file")->required();
  pro_sep->add_option("n", sep_n, "second term source or file")->required();
  pro_sep->add_option("--max-q", max_q, "largest level tried (default 3)");
  pro_sep->callback([&] {
    Config cfg = make_cfg();
    std::optional<int> at = separate(load_term(sep_m), load_term(sep_n),
                                     max_q, cfg);
    if (json_out) {
      Json j{{"separated", at.has_value()}};
      if (at)
        j["q"] = *at;
      else
        j["max_q"] = max_q;
      emit(j);
    } else if (at) {
      std::cout << "separated at q=" << *at << "\n";
    } else {
      std::cout << "not separated up to q=" << max_q << "\n";
    }
  });

  // ---- dfa --------------------------------------------------------------

  auto* dfa = app.add_subcommand(
      "dfa", "deterministic automata and the Church-encoding bridge");
  dfa->fallthrough();
  dfa->require_subcommand(1);

  std::string drun_file, drun_word;
  auto* dfa_run = dfa->add_subcommand(
      "run", "run on a word: dfa run DFA.json WORD");
  dfa_run->fallthrough();
  dfa_run->add_option("dfa", drun_file, "automaton JSON file")->required();
  dfa_run->add_option("word", drun_word,
                      "input word, single-char letters (default empty)");
  dfa_run->callback([&] {
    Dfa d = dfa_from_json(load_json(drun_file));
    std::int64_t state = run(d, drun_word);
    bool ok = d.final.count(state) > 0;
    if (json_out)
      emit(Json{{"state", state}, {"accepted", ok}});
    else
      std::cout << "state " << state << ", "
                << (ok ? "accepted" : "rejected") << "\n";
  });

  std::string dacc_file, dacc_term, dacc_word;
  auto* dfa_acc = dfa->add_subcommand(
      "accepts",
      "evaluate a Church term against the automaton: dfa accepts DFA.json "
      "TERM | dfa accepts DFA.json --word W");
  dfa_acc->fallthrough();
  dfa_acc->add_option("dfa", dacc_file, "automaton JSON file")->required();
  dfa_acc->add_option("term", dacc_term, "Church-type term source or file");
  dfa_acc->add_option("--word", dacc_word, "word to Church-encode instead");
  dfa_acc->callback([&] {
    Config cfg = make_cfg();
    Dfa d = dfa_from_json(load_json(dacc_file));
    bool have_word = dfa_acc->count("--word") > 0;
    if (have_word == !dacc_term.empty())
      throw usage_error("dfa accepts needs exactly one of a term or --word");
    Element x = have_word
                    ? word_element(static_cast<int>(d.alphabet.size()),
                                   word_indices(d.alphabet, dacc_word), d.q,
                                   cfg)
                    : interpret(load_term(dacc_term), d.q, {}, {}, cfg);
    std::int64_t state = eval_church(d, x, cfg);
    bool ok = d.final.count(state) > 0;
    if (json_out)
      emit(Json{{"state", state}, {"accepted", ok}});
    else
      std::cout << "state " << state << ", "
                << (ok ? "accepted" : "rejected") << "\n";
  });

  std::string dreg_file;
  auto* dfa_reg = dfa->add_subcommand(
      "to-reg",
      "the term language the automaton recognizes: dfa to-reg DFA.json");
  dfa_reg->fallthrough();
  dfa_reg->add_option("dfa", dreg_file, "automaton JSON file")->required();
  dfa_reg->callback([&] {
    Config cfg = make_cfg();
    Dfa d = dfa_from_json(load_json(dreg_file));
    emit_language(language_of_dfa_as_reg(d), json_out, cfg);
  });

  std::string dmon_file;
  auto* dfa_mon = dfa->add_subcommand(
      "monoid", "transition monoid: dfa monoid DFA.json");
  dfa_mon->fallthrough();
  dfa_mon->add_option("dfa", dmon_file, "automaton JSON file")->required();
  dfa_mon->callback([&] {
    Dfa d = dfa_from_json(load_json(dmon_file));
    MonoidPresentation m = transition_monoid(d);
    if (json_out) {
      Json j;
      j["size"] = m.size();
      j["degree"] = m.degree;
      j["elements"] = m.elements;
      j["unit"] = m.unit;
      j["letter_of"] = m.letter_of;
      j["mult"] = m.mult;
      j["reps"] = m.reps;
      emit(j);
      return;
    }
    std::cout << "transition monoid: " << m.size() << " elements (degree "
              << m.degree << ")\n";
    for (std::size_t i = 0; i < m.elements.size(); ++i) {
      std::cout << "  " << i << ": [";
      for (std::size_t s = 0; s < m.elements[i].size(); ++s)
        std::cout << (s ? ", " : "") << m.elements[i][s];
      std::cout << "] = " << word_text(m, m.reps[i]) << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
