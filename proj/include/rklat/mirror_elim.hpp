#pragma once
// Mirror elimination for one-free terms. push_mirrors drives every mirror
// down to the variables (producing a clean term denoting either the input or
// its mirror image, depending on the polarity); to_directed / from_directed
// translate between clean terms over X and simple terms over the duplicated
// variable set X x 2.

#include "rklat/expr.hpp"

namespace rklat {

enum class Polarity : std::uint8_t { Forward, Mirrored };

inline Polarity flip(Polarity p) {
  return p == Polarity::Forward ? Polarity::Mirrored : Polarity::Forward;
}

// Mirror applied only directly to variables (and no unit constant).
inline bool is_clean(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Zero:
    case ExprKind::Var:
      return true;
    case ExprKind::Mirror:
      return e->left->kind == ExprKind::Var;
    case ExprKind::Plus:
      return is_clean(e->left);
    case ExprKind::Sum:
    case ExprKind::Prod:
    case ExprKind::Inter:
      return is_clean(e->left) && is_clean(e->right);
    default:
      return false;
  }
}

inline Expr push_mirrors(const Expr& e, Polarity p = Polarity::Forward) {
  switch (e->kind) {
    case ExprKind::Zero:
      return zero();
    case ExprKind::Var:
      return p == Polarity::Forward ? e : mirror(e);
    case ExprKind::Mirror:
      return push_mirrors(e->left, flip(p));
    case ExprKind::Sum:
      return sum(push_mirrors(e->left, p), push_mirrors(e->right, p));
    case ExprKind::Inter:
      return inter(push_mirrors(e->left, p), push_mirrors(e->right, p));
    case ExprKind::Plus:
      return plus(push_mirrors(e->left, p));
    case ExprKind::Prod:
      if (p == Polarity::Forward)
        return prod(push_mirrors(e->left, p), push_mirrors(e->right, p));
      return prod(push_mirrors(e->right, p), push_mirrors(e->left, p));
    case ExprKind::One:
      throw error("mirror elimination needs a one-free term");
    default:
      throw error("mirror elimination cannot handle the top constant");
  }
}

// Clean term over X -> simple term over X x 2: x becomes x!f, x' becomes x!b.
inline Expr to_directed(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Zero:
      return zero();
    case ExprKind::Var:
      if (e->var.dir != Dir::None) throw error("variable already directed: " + to_string(e->var));
      return var(e->var.name, Dir::Fwd);
    case ExprKind::Mirror:
      if (e->left->kind != ExprKind::Var) throw error("term is not clean");
      if (e->left->var.dir != Dir::None)
        throw error("variable already directed: " + to_string(e->left->var));
      return var(e->left->var.name, Dir::Bwd);
    case ExprKind::Sum:
      return sum(to_directed(e->left), to_directed(e->right));
    case ExprKind::Prod:
      return prod(to_directed(e->left), to_directed(e->right));
    case ExprKind::Inter:
      return inter(to_directed(e->left), to_directed(e->right));
    case ExprKind::Plus:
      return plus(to_directed(e->left));
    default:
      throw error("term is not clean");
  }
}

// Simple term over X x 2 -> clean term over X; inverse of to_directed.
inline Expr from_directed(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Zero:
      return zero();
    case ExprKind::Var:
      switch (e->var.dir) {
        case Dir::Fwd: return var(e->var.name);
        case Dir::Bwd: return mirror(var(e->var.name));
        default: throw error("undirected variable: " + to_string(e->var));
      }
    case ExprKind::Sum:
      return sum(from_directed(e->left), from_directed(e->right));
    case ExprKind::Prod:
      return prod(from_directed(e->left), from_directed(e->right));
    case ExprKind::Inter:
      return inter(from_directed(e->left), from_directed(e->right));
    case ExprKind::Plus:
      return plus(from_directed(e->left));
    default:
      throw error("term is not simple");
  }
}

}  // namespace rklat
