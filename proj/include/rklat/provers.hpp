#pragma once
// Derivation builders: routines that construct checkable derivations for
// recurring proof patterns instead of searching for them. The workhorse
// rewrites one intersection nest into another with the same leaf set
// (associativity, commutativity, idempotence), which is what test
// comparisons reduce to.

#include <algorithm>
#include <vector>

#include "rklat/derivation.hpp"
#include "rklat/expr.hpp"
#include "rklat/tests_algebra.hpp"

namespace rklat {

namespace detail {

class InterRewriter {
 public:
  explicit InterRewriter(Expr start) : cur_(std::move(start)) {}

  const Expr& current() const { return cur_; }
  std::vector<DerivPtr> take_steps() { return std::move(steps_); }

  void step(const char* ax, bool l2r, Path p) {
    DerivPtr d = d_ax(ax, l2r, std::move(p));
    cur_ = apply_deriv(d, cur_, Family::Full, false, "");
    steps_.push_back(std::move(d));
  }

  // Rotate until no intersection has an intersection as its left child.
  void nest_right() {
    for (;;) {
      std::optional<Path> found;
      for_each_subterm(cur_, [&](const Path& p, const Expr& t) {
        if (!found && t->kind == ExprKind::Inter && t->left->kind == ExprKind::Inter)
          found = p;
      });
      if (!found) return;
      step("inter-assoc", false, *found);
    }
  }

  std::vector<Expr> spine() const {
    std::vector<Expr> leaves;
    Expr t = cur_;
    while (t->kind == ExprKind::Inter) {
      leaves.push_back(t->left);
      t = t->right;
    }
    leaves.push_back(t);
    return leaves;
  }

  // Bubble-sorts the right-nested spine into ascending structural order.
  void sort_spine() {
    for (;;) {
      std::vector<Expr> leaves = spine();
      bool swapped = false;
      for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
        if (compare(leaves[i], leaves[i + 1]) <= 0) continue;
        Path p(i, 1);
        if (i + 2 == leaves.size()) {
          step("inter-comm", true, p);
        } else {
          step("inter-assoc", true, p);
          Path q = p;
          q.push_back(0);
          step("inter-comm", true, q);
          step("inter-assoc", false, p);
        }
        swapped = true;
        break;
      }
      if (!swapped) return;
    }
  }

  // Collapses adjacent equal spine elements.
  void dedupe_spine() {
    for (;;) {
      std::vector<Expr> leaves = spine();
      bool merged = false;
      for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
        if (!equal(leaves[i], leaves[i + 1])) continue;
        Path p(i, 1);
        if (i + 2 == leaves.size()) {
          step("inter-idem", true, p);
        } else {
          step("inter-assoc", true, p);
          Path q = p;
          q.push_back(0);
          step("inter-idem", true, q);
        }
        merged = true;
        break;
      }
      if (!merged) return;
    }
  }

  void canonicalize() {
    nest_right();
    sort_spine();
    dedupe_spine();
  }

 private:
  Expr cur_;
  std::vector<DerivPtr> steps_;
};

}  // namespace detail

// Derivation of from == to where both are intersection nests over the same
// set of leaves (duplicates allowed). Throws when the leaf sets differ.
inline DerivPtr prove_inter_multiset(const Expr& from, const Expr& to) {
  if (equal(from, to)) return d_refl(from);
  detail::InterRewriter a(from), b(to);
  a.canonicalize();
  b.canonicalize();
  if (!equal(a.current(), b.current()))
    throw error("intersection nests have different leaf sets: " + print(from) + " vs " +
                print(to));
  std::vector<DerivPtr> fwd = a.take_steps(), bwd = b.take_steps();
  if (bwd.empty()) return chain(fwd);
  DerivPtr back = d_sym(chain(bwd));
  if (fwd.empty()) return back;
  return d_trans(chain(fwd), back);
}

// Derivation of <A> + <B> == <B> (that is, <A> <= <B>) for B a subset of A:
// rewrite <A> into <B> & <A\B> and absorb through (e & f) + e = e.
inline DerivPtr prove_test_leq(const TestSet& a, const TestSet& b) {
  if (!std::includes(a.begin(), a.end(), b.begin(), b.end()))
    throw error("test comparison needs the right-hand set to be a subset");
  TestSet rest;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(rest, rest.begin()));
  DerivPtr split = prove_inter_multiset(test_expr(a), inter(test_expr(b), test_expr(rest)));
  return chain({shift(split, {0}), d_ax("inter-plus", true, {})});
}

// From derivations of e <= f and f <= g (in desugared sum form), builds a
// derivation of e + g == g.
inline DerivPtr compose_leq(const DerivPtr& d_ef, const DerivPtr& d_fg) {
  return chain({d_sym(shift(d_fg, {1})), d_ax("plus-ass", true, {}), shift(d_ef, {0}), d_fg});
}

}  // namespace rklat
