#include "doctest.h"

#include "prolam/json_io.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

// end-to-end tests of the command-line binary named by $PROLAM_BIN: frozen
// JSON golden lines, byte-identical reruns, the documented human-readable
// examples, and every exit-code class

using namespace prolam;

TEST_SUITE_BEGIN("cli");

namespace {

std::string bin() {
  const char* b = std::getenv("PROLAM_BIN");
  return b == nullptr ? std::string() : std::string(b);
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd =
      bin() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = out;
  return r;
}

// each invocation must reproduce itself byte for byte
RunResult run_twice(const std::string& args) {
  RunResult first = run_cli(args);
  RunResult second = run_cli(args);
  CHECK(first.code == second.code);
  CHECK(first.out == second.out);
  return first;
}

const std::filesystem::path& fixtures() {
  static const std::filesystem::path dir = [] {
    std::filesystem::path d =
        std::filesystem::temp_directory_path() / "prolam_cli_fixtures";
    std::filesystem::create_directories(d);
    auto put = [&](const char* name, const std::string& text) {
      std::ofstream out(d / name, std::ios::binary | std::ios::trunc);
      out << text;
    };
    put("parity.json",
        R"({"alphabet":["a","b"],"delta":{"a":[1,0],"b":[0,1]},"final":[1],"q":2,"q0":0})");
    put("even.json",
        R"({"alphabet":["a"],"delta":{"a":[1,0]},"final":[0],"q":2,"q0":0})");
    put("idlang.json", R"({"type":"o->o","q":2,"accepting":["2"]})");
    put("broken.json", R"({"alphabet":["a"],"delta":{"a":[2,0]},)"
                       R"("final":[0],"q":2,"q0":0})");
    return d;
  }();
  return dir;
}

std::string fixture(const char* name) {
  return (fixtures() / name).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

}  // namespace

TEST_CASE("the binary under test is configured") {
  REQUIRE_MESSAGE(!bin().empty(),
                  "PROLAM_BIN must point at the cli binary");
  RunResult r = run_cli("--help");
  CHECK(r.code == 0);
  CHECK(r.out.find("Usage") != std::string::npos);
}

TEST_CASE("json golden lines are frozen and reproducible") {
  const std::pair<std::string, std::string> golden[] = {
      {"check '\\x:o.\\y:o.x' --json", R"({"type":"o->o->o"})"},
      {"normalize '(\\x:o->o.x) (\\y:o.y)' --json",
       R"({"term":{"arg":"o","body":{"index":0,"tag":"var"},"tag":"lam"},)"
       R"("text":"\\x0:o. x0","type":"o->o"})"},
      {"interp --q 2 '\\x:o.\\y:o.x' --json",
       R"({"index":"12","q":2,"table":["0","3"],"type":"o->o->o"})"},
      {"interp --q 3 '\\f:o->o.\\x:o. f (f x)' --json",
       R"({"index":"443378798944694717957665959568713124113","q":3,)"
       R"("table":["0","12","24","3","13","21","0","11","18","0","3","7",)"
       R"("12","13","13","21","23","22","18","21","26","21","22","23","24",)"
       R"("26","26"],"type":"(o->o)->o->o"})"},
      {"def --type 'o->o' --q 2 --json",
       R"({"elements":["2"],"exact":true,"max_size_searched":2,)"
       R"("method":"first-order-projections","q":2,"type":"o->o",)"
       R"("witnesses":{"2":{"arg":"o","body":{"index":0,"tag":"var"},)"
       R"("tag":"lam"}}})"},
      {"pro separate '\\f:o->o.\\x:o.f x' '\\f:o->o.\\x:o.f (f x)' "
       "--max-q 4 --json",
       R"({"q":2,"separated":true})"},
      {"pro separate '\\x:o.x' '\\x:o.x' --max-q 3 --json",
       R"({"max_q":3,"separated":false})"},
  };
  for (const auto& [args, expect] : golden) {
    CAPTURE(args);
    RunResult r = run_twice(args);
    CHECK(r.code == 0);
    CHECK(r.out == expect + "\n");
  }
}

TEST_CASE("dfa subcommands match their frozen outputs") {
  std::string parity = fixture("parity.json");
  RunResult r = run_twice("dfa run " + parity + " ab --json");
  CHECK(r.code == 0);
  CHECK(r.out == R"({"accepted":true,"state":1})" "\n");
  r = run_twice("dfa run " + parity + " --json");
  CHECK(r.out == R"({"accepted":false,"state":0})" "\n");
  r = run_twice("dfa accepts " + parity +
                " '\\a:o->o.\\b:o->o.\\c:o. b (a c)' --json");
  CHECK(r.out == R"({"accepted":true,"state":1})" "\n");
  r = run_twice("dfa accepts " + parity + " --word aab --json");
  CHECK(r.out == R"({"accepted":false,"state":0})" "\n");
  r = run_twice("dfa monoid " + parity + " --json");
  CHECK(r.out ==
        R"({"degree":2,"elements":[[0,1],[1,0]],"letter_of":[1,0],)"
        R"("mult":[[0,1],[1,0]],"reps":[[],[0]],"size":2,"unit":0})" "\n");
}

TEST_CASE("language pipeline: to-reg output feeds membership and ops") {
  std::string even = fixture("even.json");
  RunResult lang = run_twice("dfa to-reg " + even + " --json");
  REQUIRE(lang.code == 0);
  Json parsed = parse_json_text(lang.out);
  CHECK(parsed["type"] == "(o->o)->o->o");
  CHECK(parsed["q"] == 2);
  // half of the 256 functionals restrict to an even-a count decision
  CHECK(parsed["accepting"].size() == 128);

  std::string lang_file = (fixtures() / "even_lang.json").string();
  write_file(lang_file, lang.out);
  RunResult member =
      run_twice("lang member " + lang_file + " '\\a:o->o.\\c:o. a (a c)'");
  CHECK(member.code == 0);
  CHECK(member.out == "member\n");
  member = run_twice("lang member " + lang_file +
                     " '\\a:o->o.\\c:o. a (a (a c))' --json");
  CHECK(member.out == R"({"member":false})" "\n");

  RunResult comp =
      run_twice("lang op --kind complement " + lang_file + " --json");
  REQUIRE(comp.code == 0);
  std::string comp_file = (fixtures() / "odd_lang.json").string();
  write_file(comp_file, comp.out);
  CHECK(run_cli("lang member " + comp_file +
                " '\\a:o->o.\\c:o. a (a (a c))' --json")
            .out == R"({"member":true})" "\n");

  // union of the language and its complement accepts all 256 indices
  RunResult uni = run_twice("lang op --kind union " + lang_file + " " +
                            comp_file + " --json");
  CHECK(parse_json_text(uni.out)["accepting"].size() == 256);

  RunResult emb = run_twice("lang embed " + fixture("idlang.json") +
                            " --q-to 3 --json");
  CHECK(emb.out == R"({"accepting":["3","12","21"],"q":3,"type":"o->o"})"
                   "\n");

  RunResult inter = run_twice("lang intersect " + fixture("idlang.json") +
                              " " + fixture("idlang.json") + " --json");
  Json both = parse_json_text(inter.out);
  CHECK(both["q"] == 4);
  CHECK(both["type"] == "o->o");
}

TEST_CASE("profinite pipeline: iota output feeds the checkers") {
  RunResult iota_run =
      run_twice("pro iota --word ab --alphabet ab --k 2 --json");
  REQUIRE(iota_run.code == 0);
  Json fam = parse_json_text(iota_run.out);
  CHECK(fam["k"] == 2);
  CHECK(fam["type"] == "(o->o)->(o->o)->o->o");
  CHECK(fam["components"]["1"] == "0");
  CHECK(fam["witnesses"].size() == 2);
  std::string fam_file = (fixtures() / "ab_family.json").string();
  write_file(fam_file, iota_run.out);

  // the same family from the equivalent inline term
  RunResult via_term = run_cli(
      "pro iota '\\a:o->o.\\b:o->o.\\c:o. b (a c)' --k 2 --json");
  CHECK(via_term.out == iota_run.out);

  CHECK(run_twice("pro check-natural " + fam_file + " --json").out ==
        R"({"ok":true})" "\n");
  CHECK(run_twice("pro check-parametric " + fam_file +
                  " --json --seed 7").out ==
        R"({"exhaustive":true,"ok":true})" "\n");

  RunResult womega = run_twice("pro word-omega " + fam_file + " --json");
  REQUIRE(womega.code == 0);
  Json om = parse_json_text(womega.out);
  CHECK(om["witnesses"].empty());
  std::string om_file = (fixtures() / "ab_omega.json").string();
  write_file(om_file, womega.out);
  CHECK(run_cli("pro check-natural " + om_file + " --json").out ==
        R"({"ok":true})" "\n");

  // omega is idempotent, so word-omega fixes its own output family
  RunResult again = run_cli("pro word-omega " + om_file + " --json");
  CHECK(parse_json_text(again.out)["components"] == om["components"]);

  RunResult omega = run_twice("pro omega --type o --k 2 --json");
  Json os = parse_json_text(omega.out);
  CHECK(os["type"] == "(o->o)->o->o");
  CHECK(os["k"] == 2);

  RunResult composed = run_twice("pro compose " + fixture("idcomp.json") +
                                 " " + fixture("idcomp.json") + " --json");
  CHECK(composed.code == 1);  // fixture does not exist: domain error
}

TEST_CASE("documented human-readable lines") {
  RunResult r = run_twice("interp --q 2 '\\x:o.\\y:o.x'");
  CHECK(r.out == "element 12 of [[o->o->o]] at q=2\ntable: [0, 3]\n");
  r = run_twice(
      "pro separate '\\f:o->o.\\x:o.f x' '\\f:o->o.\\x:o.f (f x)' "
      "--max-q 4");
  CHECK(r.out == "separated at q=2\n");
  r = run_twice("dfa run " + fixture("parity.json") + " ab");
  CHECK(r.out == "state 1, accepted\n");
  r = run_twice("dfa run " + fixture("parity.json") + " aab");
  CHECK(r.out == "state 0, rejected\n");
  r = run_twice("check '\\x:o.\\y:o.x'");
  CHECK(r.out == "o->o->o\n");
}

TEST_CASE("term arguments may name files") {
  std::string term_file = (fixtures() / "proj1.lam").string();
  write_file(term_file, "\\x:o.\\y:o.x\n");
  RunResult r = run_cli("interp --q 2 " + term_file + " --json");
  CHECK(r.code == 0);
  CHECK(r.out ==
        R"({"index":"12","q":2,"table":["0","3"],"type":"o->o->o"})" "\n");
}

TEST_CASE("every exit-code class is reachable") {
  // usage errors: 2
  CHECK(run_cli("", true).code == 2);
  CHECK(run_cli("frobnicate", true).code == 2);
  CHECK(run_cli("interp '\\x:o.x'", true).code == 2);       // missing --q
  CHECK(run_cli("def --q 2", true).code == 2);              // missing --type
  CHECK(run_cli("lang op --kind union " + fixture("idlang.json"), true)
            .code == 2);
  CHECK(run_cli("pro iota --word ab", true).code == 2);     // no alphabet
  CHECK(run_cli("dfa accepts " + fixture("parity.json"), true).code == 2);

  // domain errors: 1
  CHECK(run_cli("check '\\x:o. y'", true).code == 1);       // unbound
  CHECK(run_cli("check '\\x:o. x x'", true).code == 1);     // ill-typed
  CHECK(run_cli("check '\\x:o.x' --type o", true).code == 1);
  CHECK(run_cli("dfa run missing.json ab", true).code == 1);
  CHECK(run_cli("dfa run " + fixture("broken.json") + " a", true).code == 1);
  CHECK(run_cli("dfa run " + fixture("parity.json") + " xz", true).code == 1);
  CHECK(run_cli("dfa to-reg " + fixture("parity.json"), true).code == 1);
  CHECK(run_cli("lang member " + fixture("parity.json") + " '\\x:o.x'", true)
            .code == 1);
  CHECK(run_cli("pro check-natural " + fixture("idlang.json"), true).code ==
        1);

  // success: 0
  CHECK(run_cli("check '\\x:o.x'").code == 0);

  // domain errors carry the module message verbatim
  RunResult r = run_cli("check '\\x:o. y'", true);
  CHECK(r.out.find("unbound variable 'y'") != std::string::npos);
  r = run_cli("dfa to-reg " + fixture("parity.json"), true);
  CHECK((r.out.find("exceeds") != std::string::npos ||
         r.out.find("materialize") != std::string::npos));
}

TEST_SUITE_END();
