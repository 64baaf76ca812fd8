#pragma once
// Printer for the concrete term syntax. Parenthesizes by precedence only;
// parse(print(e)) reconstructs e exactly.

#include <string>

#include "rklat/expr.hpp"

namespace rklat {

namespace detail {

// Precedence levels: sum 0 < inter 1 < cat 2 < postfix 3 < atom 4.
inline int level_of(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Sum: return 0;
    case ExprKind::Inter: return 1;
    case ExprKind::Prod: return 2;
    case ExprKind::Plus:
    case ExprKind::Mirror: return 3;
    default: return 4;
  }
}

inline void print_rec(const Expr& e, int min_level, std::string& out) {
  bool parens = level_of(e) < min_level;
  if (parens) out += '(';
  switch (e->kind) {
    case ExprKind::Zero: out += '0'; break;
    case ExprKind::One: out += '1'; break;
    case ExprKind::Top: out += "top"; break;
    case ExprKind::Var: out += to_string(e->var); break;
    case ExprKind::Sum:
      print_rec(e->left, 0, out);
      out += " + ";
      print_rec(e->right, 1, out);
      break;
    case ExprKind::Inter:
      print_rec(e->left, 1, out);
      out += " & ";
      print_rec(e->right, 2, out);
      break;
    case ExprKind::Prod:
      print_rec(e->left, 2, out);
      out += " . ";
      print_rec(e->right, 3, out);
      break;
    case ExprKind::Plus:
      print_rec(e->left, 3, out);
      out += "^+";
      break;
    case ExprKind::Mirror:
      print_rec(e->left, 3, out);
      out += '\'';
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string print(const Expr& e) {
  std::string out;
  detail::print_rec(e, 0, out);
  return out;
}

}  // namespace rklat
