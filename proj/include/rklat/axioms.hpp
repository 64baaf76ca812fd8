#pragma once
// The axiom system as data: one record per stored equation, with first-order
// schema matching and instantiation. Chained equations (e.0 = 0 = 0.e and
// 1.e = e = e.1) are stored split, with -l/-r suffixes. Availability is
// gated by grammar family: simple statements use the lattice and
// concatenation tables, one-free statements add the mirror table, full
// statements use everything.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rklat/expr.hpp"
#include "rklat/parse.hpp"
#include "rklat/print.hpp"

namespace rklat {

enum class AxTable : std::uint8_t { Lattice, Concat, Mirror, Unit };

struct Axiom {
  std::string name;
  AxTable table;
  Expr lhs, rhs;
  std::optional<std::pair<Expr, Expr>> premise;  // conditional rules only

  bool conditional() const { return premise.has_value(); }
};

inline bool axiom_allowed(const Axiom& ax, Family f) {
  switch (ax.table) {
    case AxTable::Lattice:
    case AxTable::Concat: return true;
    case AxTable::Mirror: return f != Family::Simple;
    case AxTable::Unit: return f == Family::Full;
  }
  return false;
}

inline const std::vector<Axiom>& axiom_table() {
  static const std::vector<Axiom> table = [] {
    auto p = [](const char* s) { return parse(s); };
    std::vector<Axiom> t;
    auto eq = [&](const char* name, AxTable tab, const char* l, const char* r) {
      t.push_back(Axiom{name, tab, p(l), p(r), std::nullopt});
    };
    auto cond = [&](const char* name, const char* pl, const char* pr, const char* l,
                    const char* r) {
      t.push_back(Axiom{name, AxTable::Concat, p(l), p(r), std::make_pair(p(pl), p(pr))});
    };
    // distributive lattice
    eq("plus-com", AxTable::Lattice, "e + f", "f + e");
    eq("plus-ass", AxTable::Lattice, "e + (f + g)", "(e + f) + g");
    eq("plus-0", AxTable::Lattice, "e + 0", "e");
    eq("inter-comm", AxTable::Lattice, "e & f", "f & e");
    eq("inter-idem", AxTable::Lattice, "e & e", "e");
    eq("inter-assoc", AxTable::Lattice, "e & (f & g)", "(e & f) & g");
    eq("plus-inter", AxTable::Lattice, "(e + f) & g", "e & g + f & g");
    eq("inter-plus", AxTable::Lattice, "(e & f) + e", "e");
    // concatenation and iteration
    eq("seq-assoc", AxTable::Concat, "e . (f . g)", "(e . f) . g");
    eq("seq-0-l", AxTable::Concat, "e . 0", "0");
    eq("seq-0-r", AxTable::Concat, "0 . e", "0");
    eq("plus-seq", AxTable::Concat, "(e + f) . g", "e . g + f . g");
    eq("seq-plus", AxTable::Concat, "e . (f + g)", "e . f + e . g");
    eq("iter-left", AxTable::Concat, "e^+", "e + e . e^+");
    eq("iter-right", AxTable::Concat, "e^+", "e + e^+ . e");
    cond("left-ind", "e . f + f", "f", "e^+ . f + f", "f");
    cond("right-ind", "f . e + f", "f", "f . e^+ + f", "f");
    // mirror image
    eq("conv-conv", AxTable::Mirror, "e''", "e");
    eq("conv-plus", AxTable::Mirror, "(e + f)'", "e' + f'");
    eq("conv-seq", AxTable::Mirror, "(e . f)'", "f' . e'");
    eq("conv-inter", AxTable::Mirror, "(e & f)'", "e' & f'");
    eq("conv-iter", AxTable::Mirror, "(e^+)'", "e'^+");
    // unit
    eq("seq-1-l", AxTable::Unit, "1 . e", "e");
    eq("seq-1-r", AxTable::Unit, "e . 1", "e");
    eq("test-seq-inter", AxTable::Unit, "1 & (e . f)", "1 & (e & f)");
    eq("test-conv", AxTable::Unit, "1 & e'", "1 & e");
    eq("test-seq-com", AxTable::Unit, "(1 & e) . f", "f . (1 & e)");
    eq("test-inter", AxTable::Unit, "((1 & e) . f) & g", "(1 & e) . (f & g)");
    eq("test-iter", AxTable::Unit, "(g + (1 & e) . f)^+", "g^+ + (1 & e) . (g + f)^+");
    return t;
  }();
  return table;
}

inline const Axiom* find_axiom(const std::string& name) {
  for (const Axiom& ax : axiom_table())
    if (ax.name == name) return &ax;
  return nullptr;
}

// -- schema matching ---------------------------------------------------------

// Every variable occurring in an axiom schema is a metavariable.
using Bindings = std::map<std::string, Expr>;

inline bool match_schema(const Expr& pattern, const Expr& subject, Bindings& b) {
  if (pattern->kind == ExprKind::Var) {
    auto [it, inserted] = b.emplace(pattern->var.name, subject);
    return inserted || equal(it->second, subject);
  }
  if (pattern->kind != subject->kind) return false;
  switch (pattern->kind) {
    case ExprKind::Sum:
    case ExprKind::Prod:
    case ExprKind::Inter:
      return match_schema(pattern->left, subject->left, b) &&
             match_schema(pattern->right, subject->right, b);
    case ExprKind::Plus:
    case ExprKind::Mirror:
      return match_schema(pattern->left, subject->left, b);
    default:
      return true;
  }
}

inline std::set<std::string> schema_metavars(const Expr& schema) {
  std::set<std::string> out;
  for (const VarId& v : free_vars(schema)) out.insert(v.name);
  return out;
}

inline Expr instantiate_schema(const Expr& schema, const Bindings& b) {
  std::map<VarId, Expr> m;
  for (const std::string& mv : schema_metavars(schema)) {
    auto it = b.find(mv);
    if (it == b.end()) throw error("missing binding for metavariable " + mv);
    m[VarId{mv, Dir::None}] = it->second;
  }
  return substitute(schema, m);
}

struct InstantiatedAxiom {
  Expr lhs, rhs;
  std::optional<std::pair<Expr, Expr>> premise;
};

inline InstantiatedAxiom instantiate(const Axiom& ax, const Bindings& b) {
  InstantiatedAxiom out;
  out.lhs = instantiate_schema(ax.lhs, b);
  out.rhs = instantiate_schema(ax.rhs, b);
  if (ax.premise)
    out.premise = std::make_pair(instantiate_schema(ax.premise->first, b),
                                 instantiate_schema(ax.premise->second, b));
  return out;
}

// -- statements --------------------------------------------------------------

enum class Relation : std::uint8_t { Equiv, Leq };

struct Statement {
  Relation rel;
  Expr lhs, rhs;
  Family family;
};

// "e <= f" abbreviates "e + f == f".
inline std::pair<Expr, Expr> to_equation(const Statement& s) {
  if (s.rel == Relation::Leq) return {sum(s.lhs, s.rhs), s.rhs};
  return {s.lhs, s.rhs};
}

inline Statement parse_statement(const std::string& text, ParseOptions opts = {},
                                 std::optional<Family> family = std::nullopt) {
  auto pos_eq = text.find("==");
  auto pos_le = text.find("<=");
  Relation rel;
  std::size_t pos, len = 2;
  if (pos_eq != std::string::npos && (pos_le == std::string::npos || pos_eq < pos_le)) {
    rel = Relation::Equiv;
    pos = pos_eq;
  } else if (pos_le != std::string::npos) {
    rel = Relation::Leq;
    pos = pos_le;
  } else {
    throw error("statement must contain '==' or '<='");
  }
  Expr lhs = parse(text.substr(0, pos), opts);
  Expr rhs = parse(text.substr(pos + len), opts);
  Family f = family ? *family : wider(min_family(lhs), min_family(rhs));
  if (family && wider(*family, wider(min_family(lhs), min_family(rhs))) != *family)
    throw error("statement uses symbols outside the requested family");
  return Statement{rel, lhs, rhs, f};
}

inline std::string to_string(const Statement& s) {
  return print(s.lhs) + (s.rel == Relation::Equiv ? " == " : " <= ") + print(s.rhs);
}

}  // namespace rklat
