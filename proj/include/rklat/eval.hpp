#pragma once
// Bounded-exact evaluation of terms in the finite-language model. Every
// operator in the signature is length-monotone, so evaluating with all
// intermediate languages truncated to words of length <= bound computes
// exactly the semantics intersected with that length restriction.

#include <set>

#include "rklat/expr.hpp"
#include "rklat/lang.hpp"

namespace rklat {

inline Language lang_concat(const Language& l, const Language& m, int bound) {
  Language out;
  for (const Word& u : l) {
    if (static_cast<int>(u.size()) > bound) continue;
    for (const Word& v : m) {
      if (static_cast<int>(u.size() + v.size()) > bound) continue;
      out.insert(u + v);
    }
  }
  return out;
}

// L^+ restricted to the bounded universe: least fixed point of
// S -> L + L.S, which terminates because the universe is finite even when
// L contains the empty word.
inline Language lang_plus(const Language& l, int bound) {
  Language acc;
  for (const Word& u : l)
    if (static_cast<int>(u.size()) <= bound) acc.insert(u);
  for (;;) {
    Language next = lang_concat(l, acc, bound);
    std::size_t before = acc.size();
    acc.insert(next.begin(), next.end());
    if (acc.size() == before) return acc;
  }
}

inline Language eval(const Expr& e, const Interpretation& s) {
  switch (e->kind) {
    case ExprKind::Zero:
      return {};
    case ExprKind::One:
      return {kEpsilon};
    case ExprKind::Top:
      throw error("cannot evaluate the top constant; eliminate it first");
    case ExprKind::Var: {
      auto it = s.map.find(e->var);
      if (it == s.map.end()) throw error("unbound variable: " + to_string(e->var));
      return it->second;
    }
    case ExprKind::Sum: {
      Language out = eval(e->left, s);
      Language r = eval(e->right, s);
      out.insert(r.begin(), r.end());
      return out;
    }
    case ExprKind::Prod:
      return lang_concat(eval(e->left, s), eval(e->right, s), s.bound);
    case ExprKind::Inter: {
      Language a = eval(e->left, s), b = eval(e->right, s), out;
      for (const Word& w : a)
        if (b.count(w)) out.insert(w);
      return out;
    }
    case ExprKind::Plus:
      return lang_plus(eval(e->left, s), s.bound);
    case ExprKind::Mirror:
      return mirror_lang(eval(e->left, s));
  }
  throw error("unreachable");
}

// Interpretation mapping members of A to the unit language and every other
// declared variable to the empty language. The alphabet is irrelevant and
// left empty.
inline Interpretation indicator_interp(const std::set<VarId>& a, const std::set<VarId>& x) {
  for (const VarId& v : a)
    if (!x.count(v)) throw error("indicator set not contained in variable set");
  Interpretation s;
  s.bound = 0;
  for (const VarId& v : x) s.map[v] = a.count(v) ? Language{kEpsilon} : Language{};
  return s;
}

}  // namespace rklat
