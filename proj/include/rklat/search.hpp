#pragma once
// Bounded equational proof search. States are terms; a step rewrites one
// subterm through an axiom schema in either orientation. The search runs
// breadth-first from both sides of the (desugared) equation and meets in the
// middle, which keeps the effective branching depth at half the step budget.
// Orientations that leave schema metavariables unbound (such as rewriting e
// into e + 0 backwards through annihilation laws) instantiate them from a
// small candidate pool: the constants of the family plus the subterms of the
// statement. Conditional rules take part only at the root position of the
// first few frontier levels, with their premises discharged by a recursive
// unconditional search.
//
// Every returned derivation is re-checked; the search never claims
// completeness and reports NotFound (nullopt) when the budget runs out.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rklat/axioms.hpp"
#include "rklat/derivation.hpp"
#include "rklat/expr.hpp"

namespace rklat {

struct SearchConfig {
  int depth = 6;
  int size_cap = 40;
  bool conditional = false;
  int cond_depth = 4;       // step budget for premise derivations
  int cond_levels = 1;      // frontier levels at which conditional rules fire
  std::size_t max_states = 200000;
};

namespace detail {

struct SearchStep {
  std::string axiom;
  bool l2r = true;
  Path at;
  Bindings binds;
  DerivPtr premise;  // conditional steps only

  DerivPtr to_deriv(bool flipped) const {
    bool dir = flipped ? !l2r : l2r;
    if (premise) return d_cax(axiom, dir, at, binds, premise);
    return d_ax(axiom, dir, at, binds);
  }
};

struct SearchNode {
  Expr parent;  // null for origins
  SearchStep step;
};

class Searcher {
 public:
  Searcher(Statement s, SearchConfig cfg) : stmt_(std::move(s)), cfg_(cfg) {
    std::tie(lhs_, rhs_) = to_equation(stmt_);
    build_candidates();
  }

  std::optional<DerivPtr> run() {
    if (equal(lhs_, rhs_)) return finish(d_refl());
    visited_[0].emplace(lhs_, SearchNode{});
    visited_[1].emplace(rhs_, SearchNode{});
    frontier_[0].push_back(lhs_);
    frontier_[1].push_back(rhs_);
    level_[0] = level_[1] = 0;
    while (level_[0] + level_[1] < cfg_.depth && states_ < cfg_.max_states) {
      int side = pick_side();
      if (frontier_[side].empty()) side = 1 - side;
      if (frontier_[side].empty()) break;
      if (auto meet = expand_level(side)) return finish(build(*meet));
      ++level_[side];
    }
    return std::nullopt;
  }

 private:
  Statement stmt_;
  SearchConfig cfg_;
  Expr lhs_, rhs_;
  std::vector<Expr> candidates_;
  std::unordered_map<Expr, SearchNode, ExprHash, ExprEq> visited_[2];
  std::vector<Expr> frontier_[2];
  int level_[2] = {0, 0};
  std::size_t states_ = 0;
  std::map<std::string, std::optional<DerivPtr>> premise_memo_;

  int pick_side() const {
    if (frontier_[0].size() != frontier_[1].size())
      return frontier_[0].size() < frontier_[1].size() ? 0 : 1;
    return level_[0] <= level_[1] ? 0 : 1;
  }

  void build_candidates() {
    ExprSet pool;
    pool.insert(zero());
    if (stmt_.family == Family::Full) pool.insert(one());
    for (const Expr& side : {lhs_, rhs_})
      for_each_subterm(side, [&](const Path&, const Expr& t) { pool.insert(t); });
    candidates_.assign(pool.begin(), pool.end());
    std::stable_sort(candidates_.begin(), candidates_.end(),
                     [](const Expr& a, const Expr& b) { return size(a) < size(b); });
    if (candidates_.size() > 12) candidates_.resize(12);
  }

  std::optional<Expr> expand_level(int side) {
    std::vector<Expr> next;
    std::optional<Expr> meet;
    bool allow_cond = cfg_.conditional && level_[side] < cfg_.cond_levels;
    for (const Expr& state : frontier_[side]) {
      bool stop = false;
      for_successors(state, allow_cond, [&](const Expr& result, const SearchStep& step) {
        if (stop || visited_[side].count(result)) return;
        if (states_ >= cfg_.max_states) {
          stop = true;
          return;
        }
        visited_[side].emplace(result, SearchNode{state, step});
        ++states_;
        next.push_back(result);
        if (visited_[1 - side].count(result)) {
          meet = result;
          stop = true;
        }
      });
      if (meet) break;
    }
    frontier_[side] = std::move(next);
    return meet;
  }

  template <typename Fn>
  void for_successors(const Expr& state, bool allow_cond, Fn&& emit) {
    for_each_subterm(state, [&](const Path& at, const Expr& sub) {
      for (const Axiom& ax : axiom_table()) {
        if (!axiom_allowed(ax, stmt_.family)) continue;
        if (ax.conditional() && (!allow_cond || !at.empty())) continue;
        for (bool l2r : {true, false}) {
          const Expr& pattern = l2r ? ax.lhs : ax.rhs;
          const Expr& replacement = l2r ? ax.rhs : ax.lhs;
          Bindings b;
          if (!match_schema(pattern, sub, b)) continue;
          std::vector<std::string> unbound;
          for (const std::string& mv : schema_metavars(replacement))
            if (!b.count(mv)) unbound.push_back(mv);
          if (ax.conditional())
            for (const std::string& mv : schema_metavars(ax.premise->first))
              if (!b.count(mv) && std::find(unbound.begin(), unbound.end(), mv) == unbound.end())
                unbound.push_back(mv);
          assign_unbound(b, unbound, 0, [&](const Bindings& full) {
            Expr repl = instantiate_schema(replacement, full);
            Expr result = replace_at(state, at, repl);
            if (size(result) > cfg_.size_cap) return;
            SearchStep step{ax.name, l2r, at, full, nullptr};
            if (ax.conditional()) {
              step.premise = premise_derivation(ax, full);
              if (!step.premise) return;
            }
            emit(result, step);
          });
        }
      }
    });
  }

  template <typename Fn>
  void assign_unbound(Bindings& b, const std::vector<std::string>& unbound, std::size_t i,
                      Fn&& fn) {
    if (i == unbound.size()) {
      fn(b);
      return;
    }
    for (const Expr& c : candidates_) {
      b[unbound[i]] = c;
      assign_unbound(b, unbound, i + 1, fn);
      b.erase(unbound[i]);
    }
  }

  DerivPtr premise_derivation(const Axiom& ax, const Bindings& b) {
    Expr pl = instantiate_schema(ax.premise->first, b);
    Expr pr = instantiate_schema(ax.premise->second, b);
    std::string key = print(pl) + " == " + print(pr);
    auto it = premise_memo_.find(key);
    if (it != premise_memo_.end()) return it->second.value_or(nullptr);
    SearchConfig sub = cfg_;
    sub.depth = cfg_.cond_depth;
    sub.conditional = false;
    sub.max_states = cfg_.max_states / 4 + 1;
    Searcher inner(Statement{Relation::Equiv, pl, pr, stmt_.family}, sub);
    auto found = inner.run();
    premise_memo_[key] = found;
    return found.value_or(nullptr);
  }

  DerivPtr build(const Expr& meet) const {
    std::vector<DerivPtr> steps;
    // forward half: lhs -> meet
    std::vector<DerivPtr> fwd;
    for (Expr cur = meet;;) {
      const SearchNode& n = visited_[0].at(cur);
      if (!n.parent) break;
      fwd.push_back(n.step.to_deriv(false));
      cur = n.parent;
    }
    steps.insert(steps.end(), fwd.rbegin(), fwd.rend());
    // backward half: meet -> rhs, each recorded step inverted
    for (Expr cur = meet;;) {
      const SearchNode& n = visited_[1].at(cur);
      if (!n.parent) break;
      steps.push_back(n.step.to_deriv(true));
      cur = n.parent;
    }
    return chain(steps);
  }

  std::optional<DerivPtr> finish(DerivPtr d) const {
    CheckReport rep = check(d, stmt_);
    if (!rep.ok) throw error("internal: search produced an invalid derivation: " + rep.message());
    return d;
  }
};

}  // namespace detail

inline std::optional<DerivPtr> search(const Statement& s, SearchConfig cfg = {}) {
  return detail::Searcher(s, cfg).run();
}

}  // namespace rklat
