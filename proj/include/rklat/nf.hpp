#pragma once
// Normal forms: every term is equivalent to a finite sum of items, each
// either a test <A> or a product <A> . e with e one-free. Items compose
// under concatenation (a single item) and intersection (a set of items, via
// the unit parts of the bodies in the mixed case). The iteration case
// enumerates nonempty subsets of the product-shaped items, so a guard caps
// the number of such items.

#include <optional>
#include <set>
#include <vector>

#include "rklat/expr.hpp"
#include "rklat/print.hpp"
#include "rklat/tests_algebra.hpp"

namespace rklat {

struct NFItem {
  TestSet test;
  Expr body;  // null for a bare test; otherwise a one-free term

  friend bool operator<(const NFItem& a, const NFItem& b) {
    if (a.test != b.test) return a.test < b.test;
    if (!a.body || !b.body) return !a.body && b.body;
    return compare(a.body, b.body) < 0;
  }
  friend bool operator==(const NFItem& a, const NFItem& b) {
    if (a.test != b.test || !a.body != !b.body) return false;
    return !a.body || equal(a.body, b.body);
  }
};

using NormalForm = std::set<NFItem>;

struct NfOptions {
  int max_iter_items = 8;  // abort when an iteration sees more product items
};

struct NfOverflow : error {
  using error::error;
};

inline Expr item_expr(const NFItem& item) {
  Expr t = test_expr(item.test);
  return item.body ? prod(t, item.body) : t;
}

// The denoted sum, 0 for the empty set, folded left in item order.
inline Expr nf_sum(const NormalForm& items) {
  if (items.empty()) return zero();
  Expr acc = nullptr;
  for (const NFItem& item : items) {
    Expr e = item_expr(item);
    acc = acc ? sum(acc, e) : e;
  }
  return acc;
}

// Item product for concatenation: tests merge, at most one body survives on
// each side and they concatenate.
inline NFItem nf_concat(const NFItem& a, const NFItem& b) {
  TestSet t = a.test;
  t.insert(b.test.begin(), b.test.end());
  if (a.body && b.body) return {std::move(t), prod(a.body, b.body)};
  return {std::move(t), a.body ? a.body : b.body};
}

// Item product for intersection. Two bare tests merge; a bare test against a
// product contributes one item per unit part of the body; two products
// intersect their bodies.
inline std::set<NFItem> nf_inter(const NFItem& a, const NFItem& b) {
  TestSet t = a.test;
  t.insert(b.test.begin(), b.test.end());
  if (a.body && b.body) return {NFItem{std::move(t), inter(a.body, b.body)}};
  if (!a.body && !b.body) return {NFItem{std::move(t), nullptr}};
  const Expr& body = a.body ? a.body : b.body;
  std::set<NFItem> out;
  for (const TestSet& c : unit_part_tests(body)) {
    TestSet u = t;
    u.insert(c.begin(), c.end());
    out.insert(NFItem{std::move(u), nullptr});
  }
  return out;
}

inline NormalForm nf(const Expr& e, const NfOptions& opts = {}) {
  switch (e->kind) {
    case ExprKind::Zero:
      return {};
    case ExprKind::One:
      return {NFItem{{}, nullptr}};
    case ExprKind::Var:
      return {NFItem{{}, var(e->var)}};
    case ExprKind::Sum: {
      NormalForm out = nf(e->left, opts);
      NormalForm r = nf(e->right, opts);
      out.insert(r.begin(), r.end());
      return out;
    }
    case ExprKind::Prod: {
      NormalForm out;
      NormalForm l = nf(e->left, opts), r = nf(e->right, opts);
      for (const NFItem& a : l)
        for (const NFItem& b : r) out.insert(nf_concat(a, b));
      return out;
    }
    case ExprKind::Inter: {
      NormalForm out;
      NormalForm l = nf(e->left, opts), r = nf(e->right, opts);
      for (const NFItem& a : l)
        for (const NFItem& b : r) {
          auto items = nf_inter(a, b);
          out.insert(items.begin(), items.end());
        }
      return out;
    }
    case ExprKind::Mirror: {
      NormalForm out;
      for (const NFItem& item : nf(e->left, opts)) {
        if (item.body) out.insert(NFItem{item.test, mirror(item.body)});
        else out.insert(item);
      }
      return out;
    }
    case ExprKind::Plus: {
      NormalForm inner = nf(e->left, opts);
      NormalForm out;
      std::vector<NFItem> products;
      for (const NFItem& item : inner) {
        if (item.body) products.push_back(item);
        else out.insert(item);  // <A>^+ == <A>
      }
      if (static_cast<int>(products.size()) > opts.max_iter_items)
        throw NfOverflow("iteration with " + std::to_string(products.size()) +
                         " product items exceeds the configured guard of " +
                         std::to_string(opts.max_iter_items));
      for (std::uint32_t mask = 1; mask < (1u << products.size()); ++mask) {
        TestSet t;
        Expr body = nullptr;
        for (std::size_t i = 0; i < products.size(); ++i) {
          if (!(mask & (1u << i))) continue;
          t.insert(products[i].test.begin(), products[i].test.end());
          body = body ? sum(body, products[i].body) : products[i].body;
        }
        out.insert(NFItem{std::move(t), plus(body)});
      }
      return out;
    }
    default:
      throw error("normal forms are defined for the full signature, not top");
  }
}

// Replaces every occurrence of a tested variable a by 1 + a; absorbs a
// test on the left in the sense that <A> . weaken_vars(f, A) <= f <=
// weaken_vars(f, A).
inline Expr weaken_vars(const Expr& f, const TestSet& a) {
  std::map<VarId, Expr> m;
  for (const VarId& v : a) m[v] = sum(one(), var(v));
  return substitute(f, m);
}

// The one-free lower bound read off the empty-test product items of the
// normal form; 0 when there are none.
inline Expr positive_part(const Expr& f, const NfOptions& opts = {}) {
  Expr acc = nullptr;
  for (const NFItem& item : nf(f, opts)) {
    if (!item.test.empty() || !item.body) continue;
    acc = acc ? sum(acc, item.body) : item.body;
  }
  return acc ? acc : zero();
}

// -- rendering ---------------------------------------------------------------

inline std::string format_test_set(const TestSet& t) {
  std::string out = "{";
  bool first = true;
  for (const VarId& v : t) {
    if (!first) out += ",";
    out += to_string(v);
    first = false;
  }
  return out + "}";
}

inline std::string format_item(const NFItem& item) {
  std::string out = "<" + format_test_set(item.test) + ">";
  if (item.body) {
    out += " . ";
    std::string b = print(item.body);
    bool atomic = item.body->kind == ExprKind::Var || item.body->kind == ExprKind::Zero ||
                  item.body->kind == ExprKind::Plus || item.body->kind == ExprKind::Mirror;
    out += atomic ? b : "(" + b + ")";
  }
  return out;
}

}  // namespace rklat
