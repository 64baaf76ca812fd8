#include <catch2/catch_amalgamated.hpp>

#include "gen.hpp"
#include "rklat/rklat.hpp"

using namespace rklat;

namespace {

OracleConfig cheap() {
  OracleConfig cfg;
  cfg.trials = 40;
  cfg.exhaustive_cap = 20000;
  return cfg;
}

Interpretation interp1(const char* name, Language l, int bound, int alphabet = 2) {
  Interpretation s;
  s.alphabet = first_letters(alphabet);
  s.bound = bound;
  s.map[VarId{name}] = std::move(l);
  return s;
}

}  // namespace

TEST_CASE("mirror_word") {
  CHECK(mirror_word("abc") == "cba");
  CHECK(mirror_word("") == "");
  CHECK(mirror_word("aa") == "aa");

  testgen::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Word w = testgen::gen_word(rng, "ab", 0, 8);
    CHECK(mirror_word(mirror_word(w)) == w);
    CHECK(mirror_word(w).size() == w.size());
  }
}

TEST_CASE("lang_concat") {
  CHECK(lang_concat({"a"}, {"b", "c"}, 2) == Language{"ab", "ac"});
  CHECK(lang_concat({""}, {"a", "bbb"}, 2) == Language{"a"});
  CHECK(lang_concat({}, {"a"}, 5) == Language{});
}

TEST_CASE("lang_plus") {
  CHECK(lang_plus({"a"}, 3) == Language{"a", "aa", "aaa"});
  // fixpoint terminates with the empty word in the language
  CHECK(lang_plus({"", "a"}, 2) == Language{"", "a", "aa"});
  CHECK(lang_plus({}, 5) == Language{});

  testgen::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    Language l;
    int n = rng.pick(4);
    for (int j = 0; j < n; ++j) l.insert(testgen::gen_word(rng, "ab", 0, 3));
    Language p = lang_plus(l, 4);
    CHECK(lang_plus(p, 4) == p);
  }
}

TEST_CASE("eval: examples") {
  CHECK(eval(parse("x . x"), interp1("x", {"a", "b"}, 4)) ==
        Language{"aa", "ab", "ba", "bb"});
  CHECK(eval(parse("x & x'"), interp1("x", {"ab"}, 4)) == Language{});
  CHECK(eval(one(), interp1("x", {}, 4)) == Language{""});
  CHECK_THROWS_AS(eval(var("y"), interp1("x", {}, 4)), error);
  CHECK_THROWS_AS(eval(top(), interp1("x", {}, 4)), error);
}

TEST_CASE("eval: bounded exactness") {
  testgen::Rng rng(17);
  testgen::ExprGenOpts opts;
  opts.vars = {{"x"}, {"y"}};
  std::vector<VarId> vars{{"x"}, {"y"}};
  for (int i = 0; i < 120; ++i) {
    Expr e = testgen::gen_expr(rng, 1 + rng.pick(10), opts);
    Interpretation lo = testgen::gen_interp(rng, vars, 2, 3, 3);
    Interpretation hi = lo;
    hi.bound = 6;
    Language big = eval(e, hi), small = eval(e, lo), cut;
    for (const Word& w : big)
      if (static_cast<int>(w.size()) <= lo.bound) cut.insert(w);
    REQUIRE(small == cut);
  }
}

TEST_CASE("indicator interpretation") {
  std::set<VarId> x{{"x"}, {"y"}};
  Interpretation s = indicator_interp({{"x"}}, x);
  CHECK(s.map.at(VarId{"x"}) == Language{""});
  CHECK(s.map.at(VarId{"y"}) == Language{});
  CHECK(indicator_interp({}, {{"x"}}).map.at(VarId{"x"}) == Language{});
  Interpretation both = indicator_interp(x, x);
  CHECK(both.map.at(VarId{"x"}) == Language{""});
  CHECK(both.map.at(VarId{"y"}) == Language{""});
  CHECK_THROWS_AS(indicator_interp({{"z"}}, x), error);
}

TEST_CASE("refute: finds and certifies counterexamples") {
  auto cex = refute(parse("x . y"), parse("y . x"), cheap());
  REQUIRE(cex.has_value());
  Language le = eval(parse("x . y"), cex->sigma), lf = eval(parse("y . x"), cex->sigma);
  CHECK(le.count(cex->witness));
  CHECK_FALSE(lf.count(cex->witness));

  CHECK_FALSE(refute(parse("1 & x"), parse("x & 1"), cheap()).has_value());

  testgen::Rng rng(23);
  testgen::ExprGenOpts opts;
  for (int i = 0; i < 30; ++i) {
    Expr e = testgen::gen_expr(rng, 1 + rng.pick(8), opts);
    CHECK_FALSE(refute(e, e, cheap()).has_value());
  }
}

TEST_CASE("refute: returned counterexamples survive generated pairs") {
  testgen::Rng rng(29);
  testgen::ExprGenOpts opts;
  for (int i = 0; i < 60; ++i) {
    Expr e = testgen::gen_expr(rng, 1 + rng.pick(8), opts);
    Expr f = testgen::gen_expr(rng, 1 + rng.pick(8), opts);
    auto cex = refute(e, f, cheap());
    if (cex) {
      Language le = eval(e, cex->sigma), lf = eval(f, cex->sigma);
      REQUIRE(le.count(cex->witness));
      REQUIRE_FALSE(lf.count(cex->witness));
    }
  }
}

TEST_CASE("equiv_bounded: examples") {
  CHECK_FALSE(equiv_bounded(parse("e + e"), parse("e"), cheap()).refuted());
  CHECK(equiv_bounded(parse("x . y"), parse("x & y"), cheap()).refuted());
  CHECK_FALSE(equiv_bounded(parse("0"), parse("0^+"), cheap()).refuted());
}

TEST_CASE("interpretation stream: exhaustive tier contract") {
  OracleConfig cfg;
  cfg.alphabet_size = 1;
  cfg.bound = 1;
  cfg.trials = 0;
  auto interps = gen_interpretations({{"x"}}, cfg);
  REQUIRE(interps.size() == 4);
  std::set<Language> langs;
  for (const auto& s : interps) langs.insert(s.map.at(VarId{"x"}));
  CHECK(langs == std::set<Language>{{}, {""}, {"a"}, {"", "a"}});
}

TEST_CASE("interpretation stream: determinism and the eps-free filter") {
  OracleConfig cfg = cheap();
  cfg.trials = 20;
  std::set<VarId> vars{{"x"}, {"y"}};
  auto a = gen_interpretations(vars, cfg, 500);
  auto b = gen_interpretations(vars, cfg, 500);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].map == b[i].map);
    REQUIRE(a[i].bound == b[i].bound);
  }

  cfg.eps_free = true;
  for (const auto& s : gen_interpretations(vars, cfg, 2000))
    for (const auto& [v, lang] : s.map) CHECK_FALSE(lang.count(kEpsilon));
}

TEST_CASE("refute agrees with a scan of the interpretation stream") {
  testgen::Rng rng(31);
  testgen::ExprGenOpts opts;
  opts.vars = {{"x"}, {"y"}};
  OracleConfig cfg = cheap();
  cfg.trials = 10;
  for (int i = 0; i < 40; ++i) {
    Expr e = testgen::gen_expr(rng, 1 + rng.pick(7), opts);
    Expr f = testgen::gen_expr(rng, 1 + rng.pick(7), opts);
    bool via_stream = false;
    std::set<VarId> xs = free_vars(e);
    for (const VarId& v : free_vars(f)) xs.insert(v);
    for_each_interpretation(xs, cfg, [&](const Interpretation& s) {
      if (!rklat::detail::difference(eval(e, s), eval(f, s)).empty()) {
        via_stream = true;
        return false;
      }
      return true;
    });
    CHECK(refute(e, f, cfg).has_value() == via_stream);
  }
}

TEST_CASE("axiom table is sound in the model (spot check)") {
  OracleConfig cfg = cheap();
  for (const Axiom& ax : axiom_table()) {
    if (ax.conditional()) continue;
    Verdict v = equiv_bounded(ax.lhs, ax.rhs, cfg);
    INFO(ax.name);
    CHECK_FALSE(v.refuted());
  }
}

TEST_CASE("conditional axioms are sound in the model (spot check)") {
  OracleConfig cfg = cheap();
  for (const char* name : {"left-ind", "right-ind"}) {
    const Axiom* ax = find_axiom(name);
    REQUIRE(ax);
    auto bad = conditional_violation(ax->premise->first, ax->premise->second, ax->lhs, ax->rhs,
                                     cfg);
    INFO(name);
    CHECK_FALSE(bad.has_value());
  }
}

TEST_CASE("a corrupted mirror-of-product axiom is refuted") {
  Expr lhs = parse("(e . f)'"), rhs = parse("e' . f'");
  OracleConfig cfg;
  cfg.trials = 0;  // the exhaustive stage alone must catch it
  CHECK(equiv_bounded(lhs, rhs, cfg).refuted());
}

TEST_CASE("derivable consequences hold in the model") {
  OracleConfig cfg = cheap();
  const char* laws[][2] = {
      {"e + e", "e"},
      {"e & 0", "0"},
      {"e & (e + f)", "e"},
      {"e^+ . e^+ + e^+", "e^+"},
      {"(e^+)^+", "e^+"},
      {"(1 + e)^+", "1 + e^+"},
      {"0'", "0"},
      {"1'", "1"},
      {"0^+", "0"},
      {"1^+", "1"},
  };
  for (auto& law : laws) {
    INFO(law[0] << " == " << law[1]);
    CHECK_FALSE(equiv_bounded(parse(law[0]), parse(law[1]), cfg).refuted());
  }
}

TEST_CASE("reasoning rules hold pointwise in the model") {
  OracleConfig cfg = cheap();
  cfg.trials = 15;
  Expr e = var("e"), f = var("f"), g = var("g");
  std::set<VarId> xs{{"e"}, {"f"}, {"g"}};
  auto subset = [](const Language& a, const Language& b) {
    for (const Word& w : a)
      if (!b.count(w)) return false;
    return true;
  };
  for_each_interpretation(xs, cfg, [&](const Interpretation& s) {
    Language le = eval(e, s), lf = eval(f, s), lg = eval(g, s);
    if (subset(le, lg) && subset(lf, lg)) CHECK(subset(eval(sum(e, f), s), lg));
    if (subset(lg, le) && subset(lg, lf)) CHECK(subset(lg, eval(inter(e, f), s)));
    CHECK(subset(le, lf) == (eval(inter(e, f), s) == le));
    CHECK(eval(prod(e, f), s).count(kEpsilon) ==
          (le.count(kEpsilon) && lf.count(kEpsilon)));
    return true;
  });
}

TEST_CASE("interpretation text format round trips") {
  Interpretation s;
  s.alphabet = "ab@";
  std::sort(s.alphabet.begin(), s.alphabet.end());
  s.bound = 4;
  s.map[VarId{"x"}] = {"", "ab", "@a"};
  s.map[VarId{"y", Dir::Bwd}] = {"b"};
  Interpretation back = read_interpretation(write_interpretation(s));
  CHECK(back.alphabet == s.alphabet);
  CHECK(back.bound == s.bound);
  CHECK(back.map == s.map);

  CHECK_THROWS_AS(read_interpretation("x = { a }\n"), error);  // no header
}

TEST_CASE("counterexample shrinking keeps witnesses small") {
  OracleConfig cfg = cheap();
  auto cex = refute(parse("x . y"), parse("y . x"), cfg);
  REQUIRE(cex.has_value());
  std::size_t total = 0;
  for (const auto& [v, lang] : cex->sigma.map)
    for (const Word& w : lang) total += 1 + w.size();
  CHECK(total <= 4);  // one single-letter word per variable suffices
  CHECK(cex->witness.size() == 2);
}
