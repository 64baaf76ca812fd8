#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rklat/cli.hpp"

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = rklat::cli::run(std::move(args), out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: parse prints the term and its family") {
  Run r = cli({"parse", "x ^*"});
  CHECK(r.status == 0);
  CHECK(r.out == "1 + x^+\nfamily: full\n");

  // printed output re-parses to the same rendering
  Run again = cli({"parse", "1 + x^+"});
  CHECK(again.out == r.out);
}

TEST_CASE("cli: exit codes") {
  CHECK(cli({"parse", "x +"}).status == 2);          // syntax error
  CHECK(cli({"bogus-command"}).status == 2);         // usage error
  CHECK(cli({"refute", "x", "x + y"}).status == 0);  // nothing found
  CHECK(cli({"refute", "x . y", "y . x"}).status == 1);
  CHECK(cli({"check-equiv", "e + e", "e"}).status == 0);
  CHECK(cli({"derive", "x == y"}).status == 1);      // not found
  CHECK(cli({"eval", "x", "--interp", "/no/such/file"}).status == 2);
}

TEST_CASE("cli: refute prints the interpretation and witness") {
  Run r = cli({"refute", "x . y", "y . x", "--seed", "7"});
  REQUIRE(r.status == 1);
  CHECK(r.out.find("COUNTEREXAMPLE") == 0);
  CHECK(r.out.find("witness = ") != std::string::npos);
  CHECK(r.out.find("x = {") != std::string::npos);
}

TEST_CASE("cli: reports are deterministic for a fixed seed") {
  std::vector<std::string> args{"check-equiv", "x . (y + z)", "x . y", "--seed", "11"};
  Run a = cli(args), b = cli(args);
  CHECK(a.status == b.status);
  CHECK(a.out == b.out);
}

TEST_CASE("cli: nf and tests") {
  CHECK(cli({"nf", "1 & x"}).out == "<{x}>\n");
  CHECK(cli({"nf", "0"}).out.empty());
  CHECK(cli({"tests", "x . (y + 1)"}).out == "<{x}>\n<{x,y}>\n");
  CHECK(cli({"positive", "1 + x"}).out == "x\n");
}

TEST_CASE("cli: derive emits a script that check-proof accepts") {
  Run d = cli({"derive", "e + e == e"});
  REQUIRE(d.status == 0);
  std::string script = d.out.substr(0, d.out.find('\n'));

  // round-trip through a file
  std::string path = std::string(RKLAT_SOURCE_DIR) + "/build/test_derive.prf";
  {
    std::ofstream f(path);
    f << script << "\n";
  }
  CHECK(cli({"check-proof", path, "e + e == e"}).status == 0);
  CHECK(cli({"check-proof", path, "e + e == e + e"}).status == 1);
}

TEST_CASE("cli: mirror-elim, reduce, top-elim") {
  CHECK(cli({"mirror-elim", "(x . y)'"}).out == "y' . x'\n");
  CHECK(cli({"mirror-elim", "(x . y)'", "--to-simple"}).out == "y!b . x!b\n");
  CHECK(cli({"mirror-elim", "x", "--mirrored"}).out == "x'\n");
  CHECK(cli({"mirror-elim", "1 + x"}).status == 2);

  CHECK(cli({"reduce", "{a}", "a . b"}).out == "(1 + a) . b\n");
  CHECK(cli({"reduce", "a,b", "a . b"}).out == "(1 + a) . (1 + b)\n");

  Run t = cli({"top-elim", "top & x"});
  CHECK(t.status == 0);
  CHECK(t.out.find("_top") != std::string::npos);
  CHECK(cli({"parse", "top & x"}).out.rfind("top & x", 0) == 0);  // plain variable
}

TEST_CASE("cli: eval under an interpretation file") {
  std::string path = std::string(RKLAT_SOURCE_DIR) + "/build/test_interp.txt";
  {
    std::ofstream f(path);
    f << "alphabet = { a, b }\nbound = 4\nx = { a, _ }\ny = { b }\n";
  }
  Run r = cli({"eval", "x . y", "--interp", path});
  CHECK(r.status == 0);
  CHECK(r.out == "{ ab, b }\n");

  // a provided interpretation short-circuits the oracle
  CHECK(cli({"refute", "x", "y", "--interp", path}).status == 1);
  CHECK(cli({"refute", "x", "x", "--interp", path}).status == 0);
}

TEST_CASE("cli: pipeline prints one line per obligation, in order") {
  Run r = cli({"pipeline", "1 & x + y", "x + y", "--seed", "3"});
  CHECK(r.status == 0);
  CHECK(r.out ==
        "ONEFREE y <= x + y : UNREFUTED\n"
        "TEST A={x} |- x + y : DECIDED true\n");

  CHECK(cli({"pipeline", "1", "0"}).status == 1);
}

TEST_CASE("cli: json-like format is valid structured text") {
  Run r = cli({"check-equiv", "x . y", "x & y", "--format", "json-like"});
  CHECK(r.status == 1);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "refuted");
  CHECK(j["status"] == 1);
  CHECK(j.contains("witness"));

  Run p = cli({"parse", "x^*", "--format", "json-like"});
  auto pj = nlohmann::json::parse(p.out);
  CHECK(pj["expr"] == "1 + x^+");
}
