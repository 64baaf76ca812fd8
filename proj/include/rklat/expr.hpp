#pragma once
// Term syntax for reversible Kleene lattices: immutable ASTs over the
// signature {0, 1, x, +, ., &, ^+, '}, grammar families, and structural
// utilities (comparison, paths, free variables, substitution).

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rklat {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Direction tag for variables over the duplicated alphabet X x 2.
// Plain terms use Dir::None; the directed forms print as "x!f" / "x!b".
enum class Dir : std::uint8_t { None, Fwd, Bwd };

struct VarId {
  std::string name;
  Dir dir = Dir::None;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

inline std::string to_string(const VarId& v) {
  switch (v.dir) {
    case Dir::Fwd: return v.name + "!f";
    case Dir::Bwd: return v.name + "!b";
    default: return v.name;
  }
}

// Star is not a node: the surface form e^* is desugared to 1 + e^+ at parse
// time. Top is produced only by the extended reader used for top
// elimination; it is rejected by every grammar family.
enum class ExprKind : std::uint8_t {
  Zero, One, Var, Sum, Prod, Inter, Plus, Mirror, Top
};

class ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

class ExprNode {
 public:
  ExprKind kind;
  VarId var;         // Var nodes only
  Expr left, right;  // unary nodes use left only

  ExprNode(ExprKind k, VarId v, Expr l, Expr r)
      : kind(k), var(std::move(v)), left(std::move(l)), right(std::move(r)) {}
};

inline Expr zero() {
  static const Expr e = std::make_shared<ExprNode>(ExprKind::Zero, VarId{}, nullptr, nullptr);
  return e;
}
inline Expr one() {
  static const Expr e = std::make_shared<ExprNode>(ExprKind::One, VarId{}, nullptr, nullptr);
  return e;
}
inline Expr top() {
  static const Expr e = std::make_shared<ExprNode>(ExprKind::Top, VarId{}, nullptr, nullptr);
  return e;
}
inline Expr var(VarId v) {
  return std::make_shared<ExprNode>(ExprKind::Var, std::move(v), nullptr, nullptr);
}
inline Expr var(std::string name, Dir d = Dir::None) {
  return var(VarId{std::move(name), d});
}
inline Expr sum(Expr a, Expr b) {
  return std::make_shared<ExprNode>(ExprKind::Sum, VarId{}, std::move(a), std::move(b));
}
inline Expr prod(Expr a, Expr b) {
  return std::make_shared<ExprNode>(ExprKind::Prod, VarId{}, std::move(a), std::move(b));
}
inline Expr inter(Expr a, Expr b) {
  return std::make_shared<ExprNode>(ExprKind::Inter, VarId{}, std::move(a), std::move(b));
}
inline Expr plus(Expr a) {
  return std::make_shared<ExprNode>(ExprKind::Plus, VarId{}, std::move(a), nullptr);
}
inline Expr mirror(Expr a) {
  return std::make_shared<ExprNode>(ExprKind::Mirror, VarId{}, std::move(a), nullptr);
}
// e^* is sugar for 1 + e^+.
inline Expr star(Expr a) { return sum(one(), plus(std::move(a))); }

inline bool is_binary(ExprKind k) {
  return k == ExprKind::Sum || k == ExprKind::Prod || k == ExprKind::Inter;
}
inline bool is_unary(ExprKind k) {
  return k == ExprKind::Plus || k == ExprKind::Mirror;
}

inline std::strong_ordering compare(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return std::strong_ordering::equal;
  if (auto c = a->kind <=> b->kind; c != 0) return c;
  switch (a->kind) {
    case ExprKind::Var:
      return a->var <=> b->var;
    case ExprKind::Sum:
    case ExprKind::Prod:
    case ExprKind::Inter:
      if (auto c = compare(a->left, b->left); c != 0) return c;
      return compare(a->right, b->right);
    case ExprKind::Plus:
    case ExprKind::Mirror:
      return compare(a->left, b->left);
    default:
      return std::strong_ordering::equal;
  }
}

inline bool equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};
using ExprSet = std::set<Expr, ExprLess>;

inline std::size_t hash_value(const Expr& e) {
  std::size_t h = static_cast<std::size_t>(e->kind) * 0x9e3779b97f4a7c15ull;
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  switch (e->kind) {
    case ExprKind::Var:
      mix(std::hash<std::string>{}(e->var.name));
      mix(static_cast<std::size_t>(e->var.dir));
      break;
    case ExprKind::Sum:
    case ExprKind::Prod:
    case ExprKind::Inter:
      mix(hash_value(e->left));
      mix(hash_value(e->right));
      break;
    case ExprKind::Plus:
    case ExprKind::Mirror:
      mix(hash_value(e->left));
      break;
    default:
      break;
  }
  return h;
}

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return hash_value(e); }
};
struct ExprEq {
  bool operator()(const Expr& a, const Expr& b) const { return equal(a, b); }
};

inline int size(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Sum:
    case ExprKind::Prod:
    case ExprKind::Inter:
      return 1 + size(e->left) + size(e->right);
    case ExprKind::Plus:
    case ExprKind::Mirror:
      return 1 + size(e->left);
    default:
      return 1;
  }
}

// -- grammar families ------------------------------------------------------

enum class Family : std::uint8_t { Simple, OneFree, Full };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Simple: return "simple";
    case Family::OneFree: return "one-free";
    default: return "full";
  }
}

inline bool check_family(const Expr& e, Family f) {
  switch (e->kind) {
    case ExprKind::Top:
      return false;
    case ExprKind::One:
      return f == Family::Full;
    case ExprKind::Mirror:
      return f != Family::Simple && check_family(e->left, f);
    case ExprKind::Plus:
      return check_family(e->left, f);
    case ExprKind::Sum:
    case ExprKind::Prod:
    case ExprKind::Inter:
      return check_family(e->left, f) && check_family(e->right, f);
    default:
      return true;
  }
}

inline bool contains_top(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Top: return true;
    case ExprKind::Sum:
    case ExprKind::Prod:
    case ExprKind::Inter:
      return contains_top(e->left) || contains_top(e->right);
    case ExprKind::Plus:
    case ExprKind::Mirror:
      return contains_top(e->left);
    default:
      return false;
  }
}

// Smallest family whose signature covers e. Top has no family.
inline Family min_family(const Expr& e) {
  if (contains_top(e)) throw error("top constant has no grammar family");
  if (!check_family(e, Family::OneFree)) return Family::Full;
  if (!check_family(e, Family::Simple)) return Family::OneFree;
  return Family::Simple;
}

inline Family wider(Family a, Family b) { return a < b ? b : a; }

// -- structural utilities ---------------------------------------------------

inline void collect_vars(const Expr& e, std::set<VarId>& out) {
  switch (e->kind) {
    case ExprKind::Var:
      out.insert(e->var);
      break;
    case ExprKind::Sum:
    case ExprKind::Prod:
    case ExprKind::Inter:
      collect_vars(e->left, out);
      collect_vars(e->right, out);
      break;
    case ExprKind::Plus:
    case ExprKind::Mirror:
      collect_vars(e->left, out);
      break;
    default:
      break;
  }
}

inline std::set<VarId> free_vars(const Expr& e) {
  std::set<VarId> out;
  collect_vars(e, out);
  return out;
}

inline Expr substitute(const Expr& e, const std::map<VarId, Expr>& m) {
  switch (e->kind) {
    case ExprKind::Var: {
      auto it = m.find(e->var);
      return it == m.end() ? e : it->second;
    }
    case ExprKind::Sum:
      return sum(substitute(e->left, m), substitute(e->right, m));
    case ExprKind::Prod:
      return prod(substitute(e->left, m), substitute(e->right, m));
    case ExprKind::Inter:
      return inter(substitute(e->left, m), substitute(e->right, m));
    case ExprKind::Plus:
      return plus(substitute(e->left, m));
    case ExprKind::Mirror:
      return mirror(substitute(e->left, m));
    default:
      return e;
  }
}

// Paths address subterms by child index: 0 = left (or the only child),
// 1 = right.
using Path = std::vector<int>;

inline std::string to_string(const Path& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p[i]);
  }
  return s + "]";
}

inline Expr child(const Expr& e, int i) {
  if (i == 0 && (is_unary(e->kind) || is_binary(e->kind))) return e->left;
  if (i == 1 && is_binary(e->kind)) return e->right;
  throw error("path step " + std::to_string(i) + " out of range");
}

inline Expr subterm_at(const Expr& e, const Path& p, std::size_t from = 0) {
  if (from == p.size()) return e;
  return subterm_at(child(e, p[from]), p, from + 1);
}

inline Expr replace_at(const Expr& e, const Path& p, const Expr& sub, std::size_t from = 0) {
  if (from == p.size()) return sub;
  int i = p[from];
  Expr c = replace_at(child(e, i), p, sub, from + 1);
  switch (e->kind) {
    case ExprKind::Sum:   return i == 0 ? sum(c, e->right) : sum(e->left, c);
    case ExprKind::Prod:  return i == 0 ? prod(c, e->right) : prod(e->left, c);
    case ExprKind::Inter: return i == 0 ? inter(c, e->right) : inter(e->left, c);
    case ExprKind::Plus:  return plus(c);
    case ExprKind::Mirror: return mirror(c);
    default:
      throw error("path step out of range");
  }
}

// Preorder enumeration of all subterm positions.
inline void for_each_subterm(const Expr& e,
                             const std::function<void(const Path&, const Expr&)>& fn) {
  Path p;
  auto rec = [&](auto&& self, const Expr& t) -> void {
    fn(p, t);
    if (is_binary(t->kind)) {
      p.push_back(0);
      self(self, t->left);
      p.back() = 1;
      self(self, t->right);
      p.pop_back();
    } else if (is_unary(t->kind)) {
      p.push_back(0);
      self(self, t->left);
      p.pop_back();
    }
  };
  rec(rec, e);
}

}  // namespace rklat
