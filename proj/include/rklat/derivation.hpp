#pragma once
// Checkable equational derivations. A derivation is applied to the left side
// of a statement as a sequence of rewrites; checking succeeds when the
// result is structurally equal to the right side. Axiom steps rewrite the
// subterm at a path through an axiom schema, in either orientation, with
// bindings inferred from matching and completed from the explicit binding
// list. Conditional steps additionally carry a derivation of their
// instantiated premise.
//
// Script format (s-expression style, ';' starts a line comment):
//
//   (trans (ax plus-com L2R at [] {e:=x, f:=0}) (ax plus-0 L2R at []))
//
// with node kinds refl | sym | trans | ax | cax; cax takes a trailing
// "premise <derivation>".

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rklat/axioms.hpp"
#include "rklat/expr.hpp"
#include "rklat/parse.hpp"
#include "rklat/print.hpp"

namespace rklat {

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

enum class DKind : std::uint8_t { Refl, Sym, Trans, Ax, CondAx };

struct Derivation {
  DKind kind = DKind::Refl;
  Expr refl;            // Refl: optional expected subject
  DerivPtr a, b;        // Sym uses a; Trans uses a then b
  std::string axiom;    // Ax / CondAx
  bool l2r = true;
  Path at;
  Bindings binds;
  DerivPtr premise;     // CondAx
};

inline DerivPtr d_refl(Expr e = nullptr) {
  auto d = std::make_shared<Derivation>();
  d->kind = DKind::Refl;
  d->refl = std::move(e);
  return d;
}
inline DerivPtr d_sym(DerivPtr inner) {
  auto d = std::make_shared<Derivation>();
  d->kind = DKind::Sym;
  d->a = std::move(inner);
  return d;
}
inline DerivPtr d_trans(DerivPtr first, DerivPtr second) {
  auto d = std::make_shared<Derivation>();
  d->kind = DKind::Trans;
  d->a = std::move(first);
  d->b = std::move(second);
  return d;
}
inline DerivPtr d_ax(std::string name, bool l2r, Path at, Bindings binds = {}) {
  auto d = std::make_shared<Derivation>();
  d->kind = DKind::Ax;
  d->axiom = std::move(name);
  d->l2r = l2r;
  d->at = std::move(at);
  d->binds = std::move(binds);
  return d;
}
inline DerivPtr d_cax(std::string name, bool l2r, Path at, Bindings binds, DerivPtr premise) {
  auto d = std::make_shared<Derivation>();
  d->kind = DKind::CondAx;
  d->axiom = std::move(name);
  d->l2r = l2r;
  d->at = std::move(at);
  d->binds = std::move(binds);
  d->premise = std::move(premise);
  return d;
}

// Folds a step list into left-nested transitivity; empty lists are refl.
inline DerivPtr chain(const std::vector<DerivPtr>& steps) {
  if (steps.empty()) return d_refl();
  DerivPtr acc = steps[0];
  for (std::size_t i = 1; i < steps.size(); ++i) acc = d_trans(acc, steps[i]);
  return acc;
}

// Re-roots a derivation at a subterm position: every axiom step has the
// prefix prepended to its path. Used to splice lemma derivations into
// larger contexts.
inline DerivPtr shift(const DerivPtr& d, const Path& prefix) {
  if (prefix.empty()) return d;
  auto out = std::make_shared<Derivation>(*d);
  switch (d->kind) {
    case DKind::Refl:
      out->refl = nullptr;  // subject expectation no longer applies verbatim
      break;
    case DKind::Sym:
      out->a = shift(d->a, prefix);
      break;
    case DKind::Trans:
      out->a = shift(d->a, prefix);
      out->b = shift(d->b, prefix);
      break;
    case DKind::Ax:
    case DKind::CondAx: {
      Path p = prefix;
      p.insert(p.end(), d->at.begin(), d->at.end());
      out->at = std::move(p);
      break;
    }
  }
  return out;
}

// -- checking ----------------------------------------------------------------

struct CheckFail {
  std::string addr;
  std::string reason;
};

struct CheckReport {
  bool ok = false;
  std::string addr;     // address of the first failing node, "" when ok
  std::string reason;

  std::string message() const {
    return ok ? "ok" : "check failed at node " + (addr.empty() ? "root" : addr) + ": " + reason;
  }
};

namespace detail {

inline std::string addr_down(const std::string& addr, int i) {
  return addr.empty() ? std::to_string(i) : addr + "." + std::to_string(i);
}

// Applies the derivation to the subject. `reversed` runs it right-to-left
// (the meaning of sym).
inline Expr apply_deriv(const DerivPtr& d, const Expr& subject, Family fam, bool reversed,
                        const std::string& addr) {
  switch (d->kind) {
    case DKind::Refl:
      if (d->refl && !equal(d->refl, subject))
        throw CheckFail{addr, "refl expects " + print(d->refl) + " but the subject is " +
                                  print(subject)};
      return subject;
    case DKind::Sym:
      return apply_deriv(d->a, subject, fam, !reversed, addr_down(addr, 0));
    case DKind::Trans:
      if (!reversed)
        return apply_deriv(d->b, apply_deriv(d->a, subject, fam, false, addr_down(addr, 0)),
                           fam, false, addr_down(addr, 1));
      return apply_deriv(d->a, apply_deriv(d->b, subject, fam, true, addr_down(addr, 1)), fam,
                         true, addr_down(addr, 0));
    case DKind::Ax:
    case DKind::CondAx: {
      const Axiom* ax = find_axiom(d->axiom);
      if (!ax) throw CheckFail{addr, "unknown axiom " + d->axiom};
      if (!axiom_allowed(*ax, fam))
        throw CheckFail{addr, "axiom " + d->axiom + " is not available in the " +
                                  std::string(to_string(fam)) + " family"};
      if (ax->conditional() != (d->kind == DKind::CondAx))
        throw CheckFail{addr, ax->conditional()
                                  ? "axiom " + d->axiom + " is conditional; use a cax node"
                                  : "axiom " + d->axiom + " is unconditional; use an ax node"};
      bool l2r = reversed ? !d->l2r : d->l2r;
      const Expr& from = l2r ? ax->lhs : ax->rhs;
      const Expr& to = l2r ? ax->rhs : ax->lhs;
      Expr sub;
      try {
        sub = subterm_at(subject, d->at);
      } catch (const error& err) {
        throw CheckFail{addr, std::string("path ") + to_string(d->at) +
                                  " does not resolve in " + print(subject)};
      }
      Bindings b = d->binds;
      if (!match_schema(from, sub, b))
        throw CheckFail{addr, "subterm " + print(sub) + " does not match schema " +
                                  print(from) + " of " + d->axiom};
      Expr replacement;
      try {
        replacement = instantiate_schema(to, b);
      } catch (const error& err) {
        throw CheckFail{addr, std::string(err.what()) + " in " + d->axiom +
                                  " (give it explicitly in the step's binding list)"};
      }
      if (d->kind == DKind::CondAx) {
        std::pair<Expr, Expr> prem;
        try {
          prem = {instantiate_schema(ax->premise->first, b),
                  instantiate_schema(ax->premise->second, b)};
        } catch (const error& err) {
          throw CheckFail{addr, std::string(err.what()) + " in the premise of " + d->axiom};
        }
        Expr got = apply_deriv(d->premise, prem.first, fam, false, addr_down(addr, 0));
        if (!equal(got, prem.second))
          throw CheckFail{addr, "premise derivation proves " + print(prem.first) + " == " +
                                    print(got) + " but " + print(prem.second) + " is required"};
      }
      return replace_at(subject, d->at, replacement);
    }
  }
  throw CheckFail{addr, "corrupt derivation node"};
}

}  // namespace detail

inline CheckReport check(const DerivPtr& d, const Statement& s) {
  auto [lhs, rhs] = to_equation(s);
  try {
    Expr got = detail::apply_deriv(d, lhs, s.family, false, "");
    if (!equal(got, rhs))
      return {false, "", "derivation proves " + print(lhs) + " == " + print(got) +
                             " but the statement requires " + print(rhs)};
    return {true, "", ""};
  } catch (const CheckFail& f) {
    return {false, f.addr, f.reason};
  }
}

// -- scripts -----------------------------------------------------------------

inline std::string to_script(const DerivPtr& d) {
  switch (d->kind) {
    case DKind::Refl:
      return d->refl ? "(refl " + print(d->refl) + ")" : "(refl)";
    case DKind::Sym:
      return "(sym " + to_script(d->a) + ")";
    case DKind::Trans:
      return "(trans " + to_script(d->a) + " " + to_script(d->b) + ")";
    case DKind::Ax:
    case DKind::CondAx: {
      std::string out = d->kind == DKind::Ax ? "(ax " : "(cax ";
      out += d->axiom;
      out += d->l2r ? " L2R at " : " R2L at ";
      out += to_string(d->at);
      if (!d->binds.empty()) {
        out += " {";
        bool first = true;
        for (const auto& [mv, e] : d->binds) {
          if (!first) out += ", ";
          out += mv + ":=" + print(e);
          first = false;
        }
        out += "}";
      }
      if (d->kind == DKind::CondAx) out += " premise " + to_script(d->premise);
      return out + ")";
    }
  }
  throw error("corrupt derivation node");
}

namespace detail {

class ScriptParser {
 public:
  explicit ScriptParser(std::string_view text) : text_(text) {}

  DerivPtr run() {
    DerivPtr d = node();
    skip();
    if (pos_ != text_.size()) fail("trailing input after derivation");
    return d;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw error("script error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      return;
    }
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    auto stop = [](char c) {
      return c == '(' || c == ')' || c == '{' || c == '}' || c == '[' || c == ']' ||
             c == ',' || c == ';';
    };
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           !stop(text_[pos_]))
      ++pos_;
    if (start == pos_) fail("expected a word");
    return std::string(text_.substr(start, pos_ - start));
  }

  // Reads expression text up to an unbalanced ')' or a top-level ',' / '}'.
  std::string expr_text() {
    skip();
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && (c == ',' || c == '}')) break;
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Path path() {
    expect('[');
    Path p;
    for (;;) {
      skip();
      if (pos_ < text_.size() && text_[pos_] == ']') {
        ++pos_;
        return p;
      }
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a path index");
      p.push_back(std::stoi(std::string(text_.substr(start, pos_ - start))));
    }
  }

  Bindings bindings() {
    Bindings b;
    expect('{');
    for (;;) {
      skip();
      if (pos_ < text_.size() && text_[pos_] == '}') {
        ++pos_;
        return b;
      }
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      std::string mv = word();
      std::size_t asg = mv.find(":=");
      std::string rest;
      if (asg != std::string::npos) {
        rest = mv.substr(asg + 2);
        mv = mv.substr(0, asg);
      } else {
        skip();
        if (pos_ + 1 < text_.size() && text_[pos_] == ':' && text_[pos_ + 1] == '=') pos_ += 2;
        else fail("expected ':=' in binding");
      }
      std::string etext = rest + expr_text();
      b[mv] = parse(etext, ParseOptions{false, true});
    }
  }

  DerivPtr node() {
    expect('(');
    std::string kind = word();
    DerivPtr result;
    if (kind == "refl") {
      skip();
      if (pos_ < text_.size() && text_[pos_] == ')') result = d_refl();
      else result = d_refl(parse(expr_text(), ParseOptions{false, true}));
    } else if (kind == "sym") {
      result = d_sym(node());
    } else if (kind == "trans") {
      std::vector<DerivPtr> parts;
      for (;;) {
        skip();
        if (pos_ >= text_.size() || text_[pos_] == ')') break;
        parts.push_back(node());
      }
      if (parts.size() < 2) fail("trans needs at least two sub-derivations");
      result = chain(parts);
    } else if (kind == "ax" || kind == "cax") {
      std::string name = word();
      std::string dir = word();
      if (dir != "L2R" && dir != "R2L") fail("direction must be L2R or R2L");
      std::string at_kw = word();
      if (at_kw != "at") fail("expected 'at'");
      Path p = path();
      Bindings b;
      skip();
      if (pos_ < text_.size() && text_[pos_] == '{') b = bindings();
      if (kind == "ax") {
        result = d_ax(name, dir == "L2R", p, b);
      } else {
        std::string prem_kw = word();
        if (prem_kw != "premise") fail("expected 'premise'");
        result = d_cax(name, dir == "L2R", p, b, node());
      }
    } else {
      fail("unknown node kind " + kind);
    }
    expect(')');
    return result;
  }
};

}  // namespace detail

inline DerivPtr parse_script(std::string_view text) {
  return detail::ScriptParser(text).run();
}

}  // namespace rklat
