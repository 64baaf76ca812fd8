#pragma once
// End-to-end reduction of a containment e <= f between full-signature terms
// to obligations over tests and one-free terms, following the normal form of
// e: a bare test <A> is decided exactly by the subset criterion on the unit
// parts of f; a product item <A> . e' leaves the one-free containment
// e' <= positive_part(weaken_vars(f, A)), which is reported with a bounded
// oracle verdict only. Also hosts the translation that eliminates the top
// constant by substituting the starred sum of all letters and their mirrors
// over the variable set extended with one fresh name.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rklat/expr.hpp"
#include "rklat/lang.hpp"
#include "rklat/nf.hpp"
#include "rklat/oracle.hpp"
#include "rklat/print.hpp"
#include "rklat/tests_algebra.hpp"

namespace rklat {

inline const std::string kTopVarName = "_top";

// Replaces every occurrence of top by (sum of a + a' over X extended with
// the reserved variable)^*, with the star unfolded as usual.
inline Expr eliminate_top(const Expr& e, const std::set<VarId>& xs) {
  std::vector<VarId> order(xs.begin(), xs.end());
  order.push_back(VarId{kTopVarName, Dir::None});
  Expr letters = nullptr;
  for (const VarId& v : order) {
    Expr both = sum(var(v), mirror(var(v)));
    letters = letters ? sum(letters, both) : both;
  }
  Expr full = star(letters);
  auto rec = [&](auto&& self, const Expr& t) -> Expr {
    switch (t->kind) {
      case ExprKind::Top: return full;
      case ExprKind::Sum: return sum(self(self, t->left), self(self, t->right));
      case ExprKind::Prod: return prod(self(self, t->left), self(self, t->right));
      case ExprKind::Inter: return inter(self(self, t->left), self(self, t->right));
      case ExprKind::Plus: return plus(self(self, t->left));
      case ExprKind::Mirror: return mirror(self(self, t->left));
      default: return t;
    }
  };
  return rec(rec, e);
}

struct TestObligation {
  TestSet test;
  Expr rhs;
  bool decided;  // exact: some unit part of rhs is contained in the test set
};

struct OneFreeObligation {
  Expr lhs, rhs;  // rhs = positive_part(weaken_vars(original rhs, test))
  std::optional<CounterExample> cex;
};

using Obligation = std::variant<TestObligation, OneFreeObligation>;

inline std::vector<Obligation> reduce_to_onefree(const Expr& e, const Expr& f,
                                                 const OracleConfig& cfg = {},
                                                 const NfOptions& opts = {}) {
  for (const Expr& t : {e, f})
    if (!check_family(t, Family::Full))
      throw error("pipeline needs full-signature terms (eliminate top first)");
  std::vector<Obligation> out;
  std::set<TestSet> f_tests = unit_part_tests(f);
  for (const NFItem& item : nf(e, opts)) {
    if (!item.body) {
      bool ok = false;
      for (const TestSet& c : f_tests)
        if (std::includes(item.test.begin(), item.test.end(), c.begin(), c.end())) {
          ok = true;
          break;
        }
      out.push_back(TestObligation{item.test, f, ok});
    } else {
      Expr rhs = positive_part(weaken_vars(f, item.test), opts);
      out.push_back(OneFreeObligation{item.body, rhs, refute(item.body, rhs, cfg)});
    }
  }
  return out;
}

inline std::string format_sigma_inline(const Interpretation& s) {
  std::string out;
  for (const auto& [v, lang] : s.map) {
    out += "; " + to_string(v) + "={";
    bool first = true;
    for (const Word& w : lang) {
      if (!first) out += ",";
      out += format_word(w);
      first = false;
    }
    out += "}";
  }
  return out;
}

inline std::string format_obligation(const Obligation& ob) {
  if (const auto* t = std::get_if<TestObligation>(&ob)) {
    return "TEST A=" + format_test_set(t->test) + " |- " + print(t->rhs) + " : DECIDED " +
           (t->decided ? "true" : "false");
  }
  const auto& o = std::get<OneFreeObligation>(ob);
  std::string line = "ONEFREE " + print(o.lhs) + " <= " + print(o.rhs) + " : ";
  if (!o.cex) return line + "UNREFUTED";
  return line + "REFUTED(witness=" + format_word(o.cex->witness) +
         format_sigma_inline(o.cex->sigma) + ")";
}

inline bool obligation_holds(const Obligation& ob) {
  if (const auto* t = std::get_if<TestObligation>(&ob)) return t->decided;
  return !std::get<OneFreeObligation>(ob).cex.has_value();
}

}  // namespace rklat
