#pragma once
// Command-line front end. Subcommands cover parsing, evaluation, the
// bounded oracle, normal forms, derivation checking and search, mirror and
// top elimination, and the reduction pipeline. Reports are deterministic
// for a fixed argument vector and seed: exit 0 on success / unrefuted /
// proof found, 1 on refuted / check failed / not found, 2 on usage or
// parse errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rklat/rklat.hpp"

namespace rklat::cli {

namespace detail {

using nlohmann::json;

struct Report {
  std::vector<std::string> lines;
  json data = json::object();
  int status = 0;

  void line(const std::string& s) { lines.push_back(s); }
};

inline json sigma_json(const Interpretation& s) {
  json j;
  j["alphabet"] = s.alphabet;
  j["bound"] = s.bound;
  json vars = json::object();
  for (const auto& [v, lang] : s.map) {
    json words = json::array();
    for (const Word& w : lang) words.push_back(w);
    vars[to_string(v)] = words;
  }
  j["vars"] = vars;
  return j;
}

inline void emit_counterexample(Report& rep, const CounterExample& cex) {
  rep.line("witness = " + format_word(cex.witness));
  std::istringstream in(write_interpretation(cex.sigma));
  std::string l;
  while (std::getline(in, l)) rep.line(l);
  rep.data["witness"] = cex.witness;
  rep.data["sigma"] = sigma_json(cex.sigma);
}

inline std::set<VarId> parse_var_set(const std::string& text) {
  std::set<VarId> out;
  std::string item;
  auto flush = [&] {
    if (item.empty()) return;
    Dir d = Dir::None;
    std::string name = item;
    if (name.size() > 2 && name[name.size() - 2] == '!') {
      char tag = name.back();
      if (tag == 'f') d = Dir::Fwd;
      else if (tag == 'b') d = Dir::Bwd;
      else throw error("bad direction tag in variable set: " + item);
      name.erase(name.size() - 2);
    }
    out.insert(VarId{name, d});
    item.clear();
  };
  for (char c : text) {
    if (c == '{' || c == '}' || c == ',' || std::isspace(static_cast<unsigned char>(c))) flush();
    else item += c;
  }
  flush();
  return out;
}

inline Interpretation load_interp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open interpretation file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_interpretation(buf.str());
}

inline std::string load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::optional<Family> family_from_flag(const std::string& flag) {
  if (flag.empty()) return std::nullopt;
  if (flag == "simple") return Family::Simple;
  if (flag == "one-free") return Family::OneFree;
  if (flag == "full") return Family::Full;
  throw error("unknown family: " + flag + " (use simple, one-free, or full)");
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using detail::Report;
  using nlohmann::json;

  CLI::App app{"rklat: terms, axioms, and transformations of reversible Kleene lattices"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "lines";
  app.add_option("--format", format, "output format: lines or json-like")
      ->check(CLI::IsMember({"lines", "json-like"}));

  OracleConfig cfg;
  std::string interp_file;
  auto add_oracle_flags = [&](CLI::App* cmd, bool with_interp = true) {
    cmd->add_option("--seed", cfg.seed, "random seed (reports are deterministic given it)");
    cmd->add_option("--bound", cfg.bound, "word length bound");
    cmd->add_option("--alphabet", cfg.alphabet_size, "alphabet size")->check(CLI::Range(1, 8));
    cmd->add_option("--words-per-var", cfg.words_per_var, "language budget per variable");
    cmd->add_option("--trials", cfg.trials, "random trials after the exhaustive stage");
    cmd->add_flag("--eps-free", cfg.eps_free, "generate only interpretations avoiding the empty word");
    cmd->add_option("--slack", cfg.slack, "budget multiplier for bullet-padded comparisons");
    if (with_interp)
      cmd->add_option("--interp", interp_file, "check under this interpretation file only");
  };

  // parse
  std::string arg_expr;
  auto* c_parse = app.add_subcommand("parse", "parse a term and print it back");
  c_parse->add_option("expr", arg_expr, "term")->required();

  // eval
  std::string eval_expr, eval_interp;
  auto* c_eval = app.add_subcommand("eval", "evaluate a term under an interpretation");
  c_eval->add_option("expr", eval_expr, "term")->required();
  c_eval->add_option("--interp", eval_interp, "interpretation file")->required();

  // check-equiv / refute
  std::string lhs_expr, rhs_expr;
  auto* c_equiv = app.add_subcommand("check-equiv", "search for a counterexample to e == f");
  c_equiv->add_option("lhs", lhs_expr, "left term")->required();
  c_equiv->add_option("rhs", rhs_expr, "right term")->required();
  add_oracle_flags(c_equiv);

  auto* c_refute = app.add_subcommand("refute", "search for a counterexample to e <= f");
  c_refute->add_option("lhs", lhs_expr, "left term")->required();
  c_refute->add_option("rhs", rhs_expr, "right term")->required();
  add_oracle_flags(c_refute);

  // nf / tests / positive
  auto* c_nf = app.add_subcommand("nf", "normal form: sum of tests and test-products");
  c_nf->add_option("expr", arg_expr, "term")->required();
  auto* c_tests = app.add_subcommand("tests", "unit part of a term as a set of tests");
  c_tests->add_option("expr", arg_expr, "term")->required();
  auto* c_positive = app.add_subcommand("positive", "one-free lower bound of a term");
  c_positive->add_option("expr", arg_expr, "term")->required();

  // derive / check-proof
  std::string stmt_text, proof_file, family_flag;
  SearchConfig scfg;
  auto* c_derive = app.add_subcommand("derive", "bounded proof search for a statement");
  c_derive->add_option("statement", stmt_text, "statement, e.g. \"e+e == e\"")->required();
  c_derive->add_option("--depth", scfg.depth, "step budget");
  c_derive->add_option("--size-cap", scfg.size_cap, "term size cap");
  c_derive->add_flag("--conditional", scfg.conditional, "allow conditional rules");
  c_derive->add_option("--cond-depth", scfg.cond_depth, "premise search budget");
  c_derive->add_option("--family", family_flag, "force a grammar family");

  auto* c_check = app.add_subcommand("check-proof", "check a derivation script");
  c_check->add_option("script", proof_file, "script file")->required();
  c_check->add_option("statement", stmt_text, "statement the script proves")->required();
  c_check->add_option("--family", family_flag, "force a grammar family");

  // mirror-elim / reduce / top-elim
  bool mirrored = false, to_simple = false;
  auto* c_mirror = app.add_subcommand("mirror-elim", "drive mirrors down to the variables");
  c_mirror->add_option("expr", arg_expr, "one-free term")->required();
  c_mirror->add_flag("--mirrored", mirrored, "produce the clean form of the mirror image");
  c_mirror->add_flag("--to-simple", to_simple, "translate the result over directed variables");

  std::string set_text;
  auto* c_reduce = app.add_subcommand("reduce", "replace tested variables a by 1 + a");
  c_reduce->add_option("set", set_text, "test set, e.g. \"{a,b}\"")->required();
  c_reduce->add_option("expr", arg_expr, "term")->required();

  std::string vars_text;
  auto* c_top = app.add_subcommand("top-elim", "substitute the top constant away");
  c_top->add_option("expr", arg_expr, "term over the extended grammar with 'top'")->required();
  c_top->add_option("--vars", vars_text, "extra variables to include in the expansion");

  // pipeline
  auto* c_pipe = app.add_subcommand("pipeline", "reduce e <= f to test and one-free obligations");
  c_pipe->add_option("lhs", lhs_expr, "left term")->required();
  c_pipe->add_option("rhs", rhs_expr, "right term")->required();
  add_oracle_flags(c_pipe, false);

  std::vector<const char*> argv;
  argv.push_back("rklat");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream buf;
    int code = app.exit(e, buf, buf);
    (code == 0 ? out : err) << buf.str();
    return code == 0 ? 0 : 2;
  }

  Report rep;
  try {
    if (app.got_subcommand(c_parse)) {
      Expr e = parse(arg_expr);
      rep.line(print(e));
      rep.line(std::string("family: ") + to_string(min_family(e)));
      rep.data["expr"] = print(e);
      rep.data["family"] = to_string(min_family(e));
    } else if (app.got_subcommand(c_eval)) {
      Expr e = parse(eval_expr);
      Interpretation s = detail::load_interp(eval_interp);
      Language l = eval(e, s);
      rep.line(format_language(l));
      json words = json::array();
      for (const Word& w : l) words.push_back(w);
      rep.data["language"] = words;
    } else if (app.got_subcommand(c_equiv) || app.got_subcommand(c_refute)) {
      Expr e = parse(lhs_expr), f = parse(rhs_expr);
      bool equivalence = app.got_subcommand(c_equiv);
      std::optional<CounterExample> cex;
      std::string side = "left";
      if (!interp_file.empty()) {
        Interpretation s = detail::load_interp(interp_file);
        Language le = eval(e, s), lf = eval(f, s);
        Language d = rklat::detail::difference(le, lf);
        if (d.empty() && equivalence) {
          d = rklat::detail::difference(lf, le);
          if (!d.empty()) {
            side = "right";
            cex = CounterExample{s, rklat::detail::least_word(d)};
          }
        } else if (!d.empty()) {
          cex = CounterExample{s, rklat::detail::least_word(d)};
        }
      } else if (equivalence) {
        Verdict v = equiv_bounded(e, f, cfg);
        if (v.refuted()) {
          side = v.witness_on_left ? "left" : "right";
          cex = v.cex;
        }
      } else {
        cex = refute(e, f, cfg);
      }
      if (cex) {
        rep.line(equivalence ? "REFUTED" : "COUNTEREXAMPLE");
        rep.line("failing-side = " + side);
        detail::emit_counterexample(rep, *cex);
        rep.data["verdict"] = "refuted";
        rep.data["failing-side"] = side;
        rep.status = 1;
      } else {
        rep.line(equivalence ? "UNREFUTED" : "NONE FOUND");
        rep.data["verdict"] = equivalence ? "unrefuted" : "none-found";
      }
    } else if (app.got_subcommand(c_nf)) {
      Expr e = parse(arg_expr);
      json items = json::array();
      for (const NFItem& item : nf(e)) {
        rep.line(format_item(item));
        items.push_back(format_item(item));
      }
      rep.data["items"] = items;
    } else if (app.got_subcommand(c_tests)) {
      Expr e = parse(arg_expr);
      json items = json::array();
      for (const TestSet& t : unit_part_tests(e)) {
        rep.line("<" + format_test_set(t) + ">");
        items.push_back(format_test_set(t));
      }
      rep.data["tests"] = items;
    } else if (app.got_subcommand(c_positive)) {
      Expr e = parse(arg_expr);
      Expr p = positive_part(e);
      rep.line(print(p));
      rep.data["expr"] = print(p);
    } else if (app.got_subcommand(c_derive)) {
      Statement s = parse_statement(stmt_text, {}, detail::family_from_flag(family_flag));
      auto d = search(s, scfg);
      if (d) {
        rep.line(to_script(*d));
        rep.data["script"] = to_script(*d);
      } else {
        rep.line("NOT FOUND");
        rep.data["script"] = nullptr;
        rep.status = 1;
      }
    } else if (app.got_subcommand(c_check)) {
      Statement s = parse_statement(stmt_text, {}, detail::family_from_flag(family_flag));
      DerivPtr d = parse_script(detail::load_file(proof_file));
      CheckReport r = check(d, s);
      rep.line(r.ok ? "OK" : r.message());
      rep.data["ok"] = r.ok;
      if (!r.ok) {
        rep.data["message"] = r.message();
        rep.status = 1;
      }
    } else if (app.got_subcommand(c_mirror)) {
      Expr e = parse(arg_expr);
      if (!check_family(e, Family::OneFree))
        throw error("mirror elimination needs a one-free term");
      Expr clean = push_mirrors(e, mirrored ? Polarity::Mirrored : Polarity::Forward);
      Expr result = to_simple ? to_directed(clean) : clean;
      rep.line(print(result));
      rep.data["expr"] = print(result);
    } else if (app.got_subcommand(c_reduce)) {
      Expr e = parse(arg_expr);
      TestSet a;
      for (const VarId& v : detail::parse_var_set(set_text)) a.insert(v);
      Expr r = weaken_vars(e, a);
      rep.line(print(r));
      rep.data["expr"] = print(r);
    } else if (app.got_subcommand(c_top)) {
      Expr e = parse_with_top(arg_expr);
      std::set<VarId> xs = free_vars(e);
      for (const VarId& v : detail::parse_var_set(vars_text)) xs.insert(v);
      Expr r = eliminate_top(e, xs);
      rep.line(print(r));
      rep.data["expr"] = print(r);
    } else if (app.got_subcommand(c_pipe)) {
      Expr e = parse(lhs_expr), f = parse(rhs_expr);
      bool all_ok = true;
      json items = json::array();
      for (const Obligation& ob : reduce_to_onefree(e, f, cfg)) {
        rep.line(format_obligation(ob));
        items.push_back(format_obligation(ob));
        all_ok = all_ok && obligation_holds(ob);
      }
      rep.data["obligations"] = items;
      rep.data["all-hold"] = all_ok;
      if (!all_ok) rep.status = 1;
    }
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (format == "json-like") {
    rep.data["status"] = rep.status;
    out << rep.data.dump(2) << "\n";
  } else {
    for (const std::string& l : rep.lines) out << l << "\n";
  }
  return rep.status;
}

}  // namespace rklat::cli
