#include <catch2/catch_amalgamated.hpp>

#include "gen.hpp"
#include "rklat/rklat.hpp"

using namespace rklat;

TEST_CASE("top elimination: examples") {
  std::set<VarId> xs{{"x"}};
  Expr expanded = eliminate_top(top(), xs);
  Expr expected =
      sum(one(), plus(sum(sum(var("x"), mirror(var("x"))),
                          sum(var("_top"), mirror(var("_top"))))));
  CHECK(equal(expanded, expected));

  CHECK(equal(eliminate_top(var("x"), xs), var("x")));

  Expr mixed = eliminate_top(inter(top(), var("x")), xs);
  CHECK(equal(mixed, inter(expected, var("x"))));
  CHECK_FALSE(contains_top(mixed));
}

TEST_CASE("top elimination: result stays inside the full grammar") {
  Expr e = parse_with_top("(x . top . y) + (top & z)");
  std::set<VarId> xs = free_vars(e);
  Expr out = eliminate_top(e, xs);
  CHECK(check_family(out, Family::Full));
  // the reserved variable prints and re-parses in permissive mode
  CHECK(equal(parse(print(out), ParseOptions{false, true}), out));
  CHECK_THROWS_AS(parse(print(out)), ParseError);
}

TEST_CASE("pipeline: test obligations are decided exactly") {
  auto obs = reduce_to_onefree(test_expr({{"x"}}), var("x"));
  REQUIRE(obs.size() == 1);
  const auto* t = std::get_if<TestObligation>(&obs[0]);
  REQUIRE(t);
  CHECK(t->test == TestSet{{"x"}});
  CHECK(t->decided);

  obs = reduce_to_onefree(one(), zero());
  REQUIRE(obs.size() == 1);
  t = std::get_if<TestObligation>(&obs[0]);
  REQUIRE(t);
  CHECK(t->test.empty());
  CHECK_FALSE(t->decided);
}

TEST_CASE("pipeline: one-free obligations carry oracle verdicts") {
  OracleConfig cfg;
  cfg.trials = 40;
  auto obs = reduce_to_onefree(var("x"), var("x"), cfg);
  REQUIRE(obs.size() == 1);
  const auto* o = std::get_if<OneFreeObligation>(&obs[0]);
  REQUIRE(o);
  CHECK(equal(o->lhs, var("x")));
  CHECK(equal(o->rhs, var("x")));
  CHECK_FALSE(o->cex.has_value());
  CHECK(obligation_holds(obs[0]));

  obs = reduce_to_onefree(parse("x . y"), parse("y . x"), cfg);
  REQUIRE(obs.size() == 1);
  o = std::get_if<OneFreeObligation>(&obs[0]);
  REQUIRE(o);
  CHECK(o->cex.has_value());
  CHECK_FALSE(obligation_holds(obs[0]));
}

TEST_CASE("pipeline: rejects terms containing top") {
  CHECK_THROWS_AS(reduce_to_onefree(top(), var("x")), error);
}

TEST_CASE("pipeline: obligation lines") {
  OracleConfig cfg;
  cfg.trials = 40;
  auto obs = reduce_to_onefree(test_expr({{"x"}, {"y"}}), var("x"), cfg);
  REQUIRE(obs.size() == 1);
  CHECK(format_obligation(obs[0]) == "TEST A={x,y} |- x : DECIDED true");

  obs = reduce_to_onefree(var("x"), var("x"), cfg);
  CHECK(format_obligation(obs[0]) == "ONEFREE x <= x : UNREFUTED");

  obs = reduce_to_onefree(parse("x . y"), parse("y . x"), cfg);
  std::string line = format_obligation(obs[0]);
  CHECK(line.rfind("ONEFREE x . y <= y . x : REFUTED(witness=", 0) == 0);
}

TEST_CASE("pipeline: mixed normal forms produce one obligation per item") {
  OracleConfig cfg;
  cfg.trials = 30;
  // nf(1&x + y) = { <{}>.y, <{x}> }, in item order
  auto obs = reduce_to_onefree(parse("1 & x + y"), parse("x + y"), cfg);
  REQUIRE(obs.size() == 2);
  const auto* o = std::get_if<OneFreeObligation>(&obs[0]);
  REQUIRE(o);
  CHECK(equal(o->lhs, var("y")));
  CHECK_FALSE(o->cex.has_value());
  const auto* t = std::get_if<TestObligation>(&obs[1]);
  REQUIRE(t);
  CHECK(t->test == TestSet{{"x"}});
  CHECK(t->decided);  // {x} contains a unit part of x + y
}

TEST_CASE("pipeline: right side is weakened before the one-free residue") {
  OracleConfig cfg;
  cfg.trials = 40;
  // <{a}> . a <= a: residue is a <= positive(weaken(a, {a})) = a <= 1 + a -> a
  auto obs = reduce_to_onefree(prod(test_expr({{"a"}}), var("a")), var("a"), cfg);
  REQUIRE(obs.size() == 1);
  const auto* o = std::get_if<OneFreeObligation>(&obs[0]);
  REQUIRE(o);
  CHECK(equal(o->lhs, var("a")));
  CHECK(equal(o->rhs, var("a")));
  CHECK_FALSE(o->cex.has_value());
}

TEST_CASE("language-shape fixtures after top elimination") {
  OracleConfig cfg;  // default budgets
  std::set<VarId> xs{{"e1"}, {"e2"}, {"f1"}, {"f2"}};
  Expr lhs = eliminate_top(parse_with_top("(e1 . e2) & (f1 . f2)"), xs);

  // two factorisations of one word overlap through an arbitrary middle
  Expr good = eliminate_top(parse_with_top("e1 . top . f2 + f1 . top . e2"), xs);
  CHECK_FALSE(refute(lhs, good, cfg).has_value());

  // exchanging the two f-factors between the summands breaks it
  Expr bad = eliminate_top(parse_with_top("e1 . top . f1 + f2 . top . e2"), xs);
  auto cex = refute(lhs, bad, cfg);
  REQUIRE(cex.has_value());
  CHECK(eval(lhs, cex->sigma).count(cex->witness));
  CHECK_FALSE(eval(bad, cex->sigma).count(cex->witness));

  std::set<VarId> abc{{"a"}, {"b"}, {"c"}};
  Expr fact_lhs = eliminate_top(parse_with_top("(a . b) & (a . c)"), abc);
  Expr fact_rhs = eliminate_top(parse_with_top("a . ((top . b) & (top . c))"), abc);
  CHECK_FALSE(refute(fact_lhs, fact_rhs, cfg).has_value());
}
