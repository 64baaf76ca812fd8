#pragma once
// Tests: sub-unit terms of the shape a & (b & ... & 1) over a finite
// variable set. A test denotes the unit language exactly when every tested
// variable's language contains the empty word, and the empty language
// otherwise. unit_part_tests represents 1 & e as a finite sum of tests.

#include <set>

#include "rklat/expr.hpp"

namespace rklat {

using TestSet = std::set<VarId>;

// Canonical shape: 1 for the empty set, otherwise the right-nested
// intersection of the variables in ascending order, ending in 1.
inline Expr test_expr(const TestSet& a) {
  Expr e = one();
  for (auto it = a.rbegin(); it != a.rend(); ++it) e = inter(var(*it), e);
  return e;
}

inline std::set<TestSet> unit_part_tests(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Zero:
      return {};
    case ExprKind::One:
      return {TestSet{}};
    case ExprKind::Var:
      return {TestSet{e->var}};
    case ExprKind::Sum: {
      std::set<TestSet> out = unit_part_tests(e->left);
      auto r = unit_part_tests(e->right);
      out.insert(r.begin(), r.end());
      return out;
    }
    case ExprKind::Prod:
    case ExprKind::Inter: {
      std::set<TestSet> out;
      for (const TestSet& a : unit_part_tests(e->left))
        for (const TestSet& b : unit_part_tests(e->right)) {
          TestSet u = a;
          u.insert(b.begin(), b.end());
          out.insert(u);
        }
      return out;
    }
    case ExprKind::Plus:
    case ExprKind::Mirror:
      return unit_part_tests(e->left);
    default:
      throw error("the top constant has no unit part");
  }
}

}  // namespace rklat
