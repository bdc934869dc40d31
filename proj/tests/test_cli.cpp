#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

// Drives the installed binary as a subprocess. COORDLENS_BIN is supplied by
// the build; data files are resolved relative to this source file.

namespace {

namespace fs = std::filesystem;

std::string data_path(const std::string& name) {
  return (fs::path(__FILE__).parent_path().parent_path() / "data" / name)
      .string();
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'')
      q += "'\\''";
    else
      q += c;
  }
  return q + "'";
}

RunResult run_cli(const std::vector<std::string>& args) {
  static int counter = 0;
  std::string errfile = "cli_stderr_" + std::to_string(counter++) + ".tmp";
  std::string cmd = shell_quote(COORDLENS_BIN);
  for (const std::string& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>" + errfile;

  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  std::ifstream ef(errfile);
  r.err.assign(std::istreambuf_iterator<char>(ef),
               std::istreambuf_iterator<char>());
  std::remove(errfile.c_str());
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  RunResult none = run_cli({});
  CHECK(none.code == 2);
  RunResult bogus = run_cli({"bogus"});
  CHECK(bogus.code == 2);
  CHECK(contains(bogus.err, "Run with --help"));
}

TEST_CASE("catalog list covers the curated entries") {
  RunResult r = run_cli({"catalog", "list"});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "S3"));
  CHECK(contains(r.out, "Q8"));
  CHECK(contains(r.out, "order 5040"));
  int lines = 0;
  for (char c : r.out) lines += (c == '\n');
  CHECK(lines == 36);
}

TEST_CASE("catalog list json is versioned and byte-identical across runs") {
  RunResult a = run_cli({"catalog", "list", "--json"});
  RunResult b = run_cli({"catalog", "list", "--json"});
  REQUIRE(a.code == 0);
  CHECK(contains(a.out, "\"schema\": 1"));
  CHECK(a.out == b.out);
}

TEST_CASE("catalog show prints invariants, rejects unknown names") {
  RunResult r = run_cli({"catalog", "show", "S5"});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "order: 120"));
  CHECK(contains(r.out, "conjugacy classes: 7"));
  CHECK(contains(r.out, "permutation view on 5 points"));

  RunResult bad = run_cli({"catalog", "show", "NOPE"});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "input error"));
}

TEST_CASE("group analyze reports invariants and the verdict") {
  RunResult r = run_cli({"group", "analyze", "S4"});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "order: 24"));
  CHECK(contains(r.out, "conjugacy classes: 5"));
  CHECK(contains(r.out, "center size: 1"));
  CHECK(contains(r.out, "nilpotent: no"));
  CHECK(contains(r.out, "direct product: no, indecomposable"));
  CHECK(contains(r.out, "conjugacy-centralizer criterion: fails"));
  CHECK(contains(r.out,
                 "verdict: recognizes via order-p torsion criterion (p=3)"));
}

TEST_CASE("group analyze accepts a group file") {
  RunResult r = run_cli({"group", "analyze", data_path("klein4.json")});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "group: Klein4"));
  CHECK(contains(r.out, "abelian: yes"));
  CHECK(contains(r.out, "direct product: yes, factors of order 2 and 2"));
  CHECK(contains(r.out, "fails via direct product decomposition"));
}

TEST_CASE("group analyze distinguishes missing and malformed files") {
  RunResult missing = run_cli({"group", "analyze", "no_such_file.json"});
  CHECK(missing.code == 2);
  CHECK(contains(missing.err, "file not found"));

  std::ofstream("cli_malformed.json") << "{\"broken\": ";
  RunResult bad = run_cli({"group", "analyze", "cli_malformed.json"});
  std::remove("cli_malformed.json");
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "parse"));
}

TEST_CASE("criteria verdict handles single groups and joint classes") {
  RunResult one = run_cli({"criteria", "verdict", "S5"});
  REQUIRE(one.code == 0);
  CHECK(contains(one.out, "outcome: recognizes"));
  CHECK(contains(one.out, "basis: conjugacy-centralizer criterion"));

  RunResult pair = run_cli({"criteria", "verdict", "S3,SL2_5"});
  REQUIRE(pair.code == 0);
  CHECK(contains(pair.out, "class: {S3, SL2_5}"));
  CHECK(contains(pair.out, "outcome: fails"));
  CHECK(contains(pair.out,
                 "basis: homomorphism into the center of a class member"));
}

TEST_CASE("reduced build summarizes and evaluates a support") {
  RunResult r = run_cli({"reduced", "build", "--factors", "S3,S3", "--ideal",
                         "{}", "--supp", "x*x=e", "--elem", "(12),(123)"});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "product classes: 36"));
  CHECK(contains(r.out, "supp = {0}"));
}

TEST_CASE("reduced eval and supp work over labeled assignments") {
  RunResult ev = run_cli({"reduced", "eval", "--factors", "S3,S3", "--ideal",
                          "{}", "--formula", "x*x=e", "--assign",
                          "x=(12),(13)"});
  REQUIRE(ev.code == 0);
  CHECK(contains(ev.out, "value = true"));

  RunResult sp = run_cli({"reduced", "supp", "--factors", "S3,S3", "--formula",
                          "x*y=y*x", "--assign", "x=(12),(123);y=(13),e"});
  REQUIRE(sp.code == 0);
  CHECK(contains(sp.out, "supp = {1}"));
}

TEST_CASE("reduced los agrees on a transferable formula and flags refusals") {
  RunResult ok = run_cli({"reduced", "los", "--factors", "S3,S3,S3", "--ideal",
                          "{0}", "--formula",
                          "(A x)(x*x=e -> (E y)(y*y*y=e & x*y=y*x))"});
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "transfer: agree"));

  RunResult refused = run_cli({"reduced", "los", "--factors", "S3,S3",
                               "--formula", "x=e | x*x=e", "--assign",
                               "x=e,e"});
  CHECK(refused.code == 1);
  CHECK(contains(refused.out, "refused"));
  CHECK(contains(refused.out, "disjunction"));
}

TEST_CASE("reduced input errors exit 2") {
  RunResult factor = run_cli({"reduced", "build", "--factors", "S3,WAT"});
  CHECK(factor.code == 2);

  RunResult range = run_cli({"reduced", "build", "--factors", "S3,S3",
                             "--ideal", "{7}"});
  CHECK(range.code == 2);
  CHECK(contains(range.err, "outside 0..1"));

  RunResult garbage = run_cli({"reduced", "build", "--factors", "S3,S3",
                               "--ideal", "garbage"});
  CHECK(garbage.code == 2);
  CHECK(contains(garbage.err, "set notation"));
}

TEST_CASE("formula parse round-trips and reports lex errors") {
  RunResult ok = run_cli({"formula", "parse", "(A x)(E y)(x*y=e)"});
  REQUIRE(ok.code == 0);
  CHECK(contains(ok.out, "parsed:"));
  CHECK(contains(ok.out, "free variables:"));

  RunResult bad = run_cli({"formula", "parse", "x*"});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "input error: parse"));
}

TEST_CASE("formula classify separates the fragment") {
  RunResult yes =
      run_cli({"formula", "classify", "(A x)(x=e -> (E y)(y*y=x))"});
  REQUIRE(yes.code == 0);
  CHECK(contains(yes.out, "h-formula: yes"));
  CHECK(contains(yes.out, "obligation: (E x) x = e"));

  RunResult no = run_cli({"formula", "classify", "x=e | y=e"});
  CHECK(no.code == 1);
  CHECK(contains(no.out, "h-formula: no"));
  CHECK(contains(no.out, "disjunction"));
}

TEST_CASE("formula equiv tests equivalence on a structure") {
  RunResult eq = run_cli({"formula", "equiv", "--on", "S3", "x*x=e",
                          "inv(x)=x"});
  CHECK(eq.code == 0);
  CHECK(contains(eq.out, "equivalent on 6 elements"));

  RunResult ne = run_cli({"formula", "equiv", "--on", "S3", "x=e", "x*x=e"});
  CHECK(ne.code == 1);
  CHECK(contains(ne.out, "not equivalent"));
  CHECK(contains(ne.out, "x=(2 3)"));
}

TEST_CASE("formula equiv accepts a structure file") {
  RunResult r = run_cli({"formula", "equiv", "--on", data_path("magma_rps.json"),
                         "x*y=y*x", "x=x"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "equivalent on 3 elements"));
}

TEST_CASE("graph classify recognizes the sample product") {
  RunResult r = run_cli({"graph", "classify", "--graph",
                         data_path("graph_path3.json")});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "classification: recognizes"));
}

TEST_CASE("graph normal-form rewrites words") {
  RunResult collapse = run_cli({"graph", "normal-form", "--graph",
                                data_path("graph_path3.json"), "--word",
                                "b:g b:g b:g"});
  REQUIRE(collapse.code == 0);
  CHECK(collapse.out == "e\n");

  RunResult swap = run_cli({"graph", "normal-form", "--graph",
                            data_path("graph_path3.json"), "--word",
                            "a:g b:g a:g"});
  REQUIRE(swap.code == 0);
  CHECK(swap.out == "b:g\n");
}

TEST_CASE("graph conjugate moves a word to the target vertex") {
  RunResult r = run_cli({"graph", "conjugate", "--graph",
                         data_path("graph_path3.json"), "--word", "c:g",
                         "--target", "a"});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "conjugator: a:g"));
  CHECK(contains(r.out, "result: a:g c:g a:g"));

  RunResult bad = run_cli({"graph", "conjugate", "--graph",
                           data_path("graph_path3.json"), "--word", "c:g",
                           "--target", "zz"});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "unknown vertex"));
}

TEST_CASE("verify runs named checks and honors the json flag") {
  RunResult one = run_cli({"verify", "sym.two_cycles"});
  REQUIRE(one.code == 0);
  CHECK(contains(one.out, "PASS sym.two_cycles"));
  CHECK(contains(one.out, "1/1 checks passed"));

  RunResult two = run_cli({"verify", "logic.zsupp_formula", "order.formula"});
  REQUIRE(two.code == 0);
  CHECK(contains(two.out, "PASS logic.zsupp_formula"));
  CHECK(contains(two.out, "PASS order.formula"));
  CHECK(contains(two.out, "2/2 checks passed"));

  RunResult js = run_cli({"verify", "sym.two_cycles", "--json"});
  REQUIRE(js.code == 0);
  CHECK(contains(js.out, "\"schema\": 1"));
  CHECK(contains(js.out, "\"all_pass\": true"));
  CHECK(contains(js.out, "\"name\": \"sym.two_cycles\""));
}

TEST_CASE("verify input errors exit 2") {
  RunResult name = run_cli({"verify", "nope.check"});
  CHECK(name.code == 2);
  CHECK(contains(name.err, "unknown check"));

  RunResult scale = run_cli({"verify", "sym.two_cycles", "--scale", "big"});
  CHECK(scale.code == 2);
  CHECK(contains(scale.err, "unknown scale"));
}
