#pragma once
// Bounded semantic oracle: interpretation streams and counterexample search
// for containment and equivalence. A counterexample is a sound disproof; the
// absence of one ("unrefuted") is never a validity proof.
//
// The stream has two stages. The exhaustive stage enumerates every
// interpretation over a tiny budget (alphabet <= 2, bound <= 3, at most two
// words per variable); it runs over a dense word-index representation so the
// full enumeration stays cheap. When the combination count for the variable
// set exceeds OracleConfig::exhaustive_cap, a reduced sub-budget (one word
// per variable, bound <= 2) is tried before falling back to the random
// stage, which draws seeded samples at the full configured budget.

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rklat/eval.hpp"
#include "rklat/expr.hpp"
#include "rklat/lang.hpp"

namespace rklat {

struct OracleConfig {
  int alphabet_size = 2;
  int bound = 6;
  int words_per_var = 4;
  int trials = 200;
  std::uint64_t seed = 1;
  bool eps_free = false;
  int slack = 3;
  std::int64_t exhaustive_cap = 2'500'000;
};

struct CounterExample {
  Interpretation sigma;
  Word witness;  // in the left language, not in the right one
};

namespace detail {

// Words over the first `letters` letters with length <= maxlen, indexed in
// (length, lex) order; concatenation and reversal as index tables. Small by
// construction: at most 15 words for two letters and maxlen 3.
struct DenseUniverse {
  int letters = 0, maxlen = 0;
  std::vector<Word> words;
  std::map<Word, int> index;
  std::vector<std::vector<int>> cat;
  std::vector<int> rev;
  std::uint32_t full = 0;

  static DenseUniverse build(int letters, int maxlen) {
    DenseUniverse u;
    u.letters = letters;
    u.maxlen = maxlen;
    u.words.push_back(kEpsilon);
    std::vector<Word> prev{kEpsilon};
    for (int len = 1; len <= maxlen; ++len) {
      std::vector<Word> cur;
      for (const Word& w : prev)
        for (int c = 0; c < letters; ++c) cur.push_back(w + static_cast<char>('a' + c));
      for (const Word& w : cur) u.words.push_back(w);
      prev = std::move(cur);
    }
    int n = static_cast<int>(u.words.size());
    for (int i = 0; i < n; ++i) u.index[u.words[i]] = i;
    u.cat.assign(n, std::vector<int>(n, -1));
    u.rev.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Word w = u.words[i] + u.words[j];
        auto it = u.index.find(w);
        if (it != u.index.end()) u.cat[i][j] = it->second;
      }
      u.rev[i] = u.index.at(mirror_word(u.words[i]));
    }
    u.full = n >= 32 ? ~0u : ((1u << n) - 1);
    return u;
  }

  std::uint32_t concat_mask(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (!(a & (1u << i))) continue;
      for (std::size_t j = 0; j < words.size(); ++j) {
        if (!(b & (1u << j))) continue;
        int t = cat[i][j];
        if (t >= 0) out |= 1u << t;
      }
    }
    return out;
  }

  std::uint32_t plus_mask(std::uint32_t a) const {
    std::uint32_t acc = a;
    for (;;) {
      std::uint32_t next = acc | concat_mask(a, acc);
      if (next == acc) return acc;
      acc = next;
    }
  }

  std::uint32_t mirror_mask(std::uint32_t a) const {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < words.size(); ++i)
      if (a & (1u << i)) out |= 1u << rev[i];
    return out;
  }

  std::uint32_t eval(const Expr& e, const std::map<VarId, std::uint32_t>& env) const {
    switch (e->kind) {
      case ExprKind::Zero: return 0;
      case ExprKind::One: return 1;  // epsilon has index 0
      case ExprKind::Var: {
        auto it = env.find(e->var);
        if (it == env.end()) throw error("unbound variable: " + to_string(e->var));
        return it->second;
      }
      case ExprKind::Sum: return eval(e->left, env) | eval(e->right, env);
      case ExprKind::Inter: return eval(e->left, env) & eval(e->right, env);
      case ExprKind::Prod: return concat_mask(eval(e->left, env), eval(e->right, env));
      case ExprKind::Plus: return plus_mask(eval(e->left, env));
      case ExprKind::Mirror: return mirror_mask(eval(e->left, env));
      default: throw error("cannot evaluate the top constant; eliminate it first");
    }
  }

  Language to_language(std::uint32_t mask) const {
    Language out;
    for (std::size_t i = 0; i < words.size(); ++i)
      if (mask & (1u << i)) out.insert(words[i]);
    return out;
  }
};

// Language masks with at most `wpv` words, ordered by popcount then value.
inline std::vector<std::uint32_t> enumerate_languages(const DenseUniverse& u, int wpv,
                                                      bool eps_free) {
  std::vector<std::uint32_t> out;
  std::uint32_t limit = u.full;
  for (int count = 0; count <= wpv; ++count)
    for (std::uint32_t m = 0; ; ++m) {
      if (std::popcount(m) == count && (!eps_free || !(m & 1u))) out.push_back(m);
      if (m == limit) break;
    }
  return out;
}

struct ExhaustiveTier {
  DenseUniverse universe;
  std::vector<std::uint32_t> languages;
  std::vector<VarId> vars;

  std::int64_t combinations() const {
    std::int64_t total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (total > (std::int64_t{1} << 62) / static_cast<std::int64_t>(languages.size()))
        return std::int64_t{1} << 62;
      total *= static_cast<std::int64_t>(languages.size());
    }
    return total;
  }
};

inline ExhaustiveTier make_tier(const std::set<VarId>& xs, int letters, int maxlen, int wpv,
                                bool eps_free) {
  ExhaustiveTier t;
  t.universe = DenseUniverse::build(letters, maxlen);
  t.languages = enumerate_languages(t.universe, wpv, eps_free);
  t.vars.assign(xs.begin(), xs.end());
  return t;
}

// Deterministic, seed-stable random draws (avoids distribution objects whose
// output varies across standard libraries).
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline Interpretation random_interp(std::mt19937_64& rng, const std::vector<VarId>& vars,
                                    const OracleConfig& cfg) {
  Interpretation s;
  s.alphabet = first_letters(cfg.alphabet_size);
  s.bound = cfg.bound;
  int minlen = cfg.eps_free ? 1 : 0;
  for (const VarId& v : vars) {
    Language lang;
    int count = static_cast<int>(draw(rng, cfg.words_per_var + 1));
    for (int i = 0; i < count; ++i) {
      int len = minlen + static_cast<int>(draw(rng, cfg.bound - minlen + 1));
      Word w;
      for (int j = 0; j < len; ++j)
        w += s.alphabet[draw(rng, s.alphabet.size())];
      lang.insert(w);
    }
    s.map[v] = lang;
  }
  return s;
}

template <typename Fn>
bool walk_exhaustive(const ExhaustiveTier& t, Fn&& fn) {
  std::size_t n = t.vars.size();
  std::vector<std::size_t> idx(n, 0);
  std::vector<std::uint32_t> env(n, t.languages.empty() ? 0 : t.languages[0]);
  for (;;) {
    if (!fn(env)) return false;
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++idx[i] < t.languages.size()) {
        env[i] = t.languages[idx[i]];
        break;
      }
      idx[i] = 0;
      env[i] = t.languages[0];
    }
    if (i == n) return true;  // odometer wrapped: done (also handles n == 0)
  }
}

inline Interpretation materialize(const ExhaustiveTier& t, const std::vector<std::uint32_t>& env) {
  Interpretation s;
  s.alphabet = first_letters(t.universe.letters);
  s.bound = t.universe.maxlen;
  for (std::size_t i = 0; i < t.vars.size(); ++i)
    s.map[t.vars[i]] = t.universe.to_language(env[i]);
  return s;
}

}  // namespace detail

// Streams interpretations for the variable set: the exhaustive stage(s)
// followed by cfg.trials random samples. The callback returns false to stop.
inline void for_each_interpretation(const std::set<VarId>& xs, const OracleConfig& cfg,
                                    const std::function<bool(const Interpretation&)>& fn) {
  int ak = std::min(cfg.alphabet_size, 2), al = std::min(cfg.bound, 3),
      aw = std::min(cfg.words_per_var, 2);
  auto tier = detail::make_tier(xs, ak, al, aw, cfg.eps_free);
  if (tier.combinations() > cfg.exhaustive_cap)
    tier = detail::make_tier(xs, ak, std::min(cfg.bound, 2), 1, cfg.eps_free);
  bool go = true;
  if (tier.combinations() <= cfg.exhaustive_cap) {
    go = detail::walk_exhaustive(tier, [&](const std::vector<std::uint32_t>& env) {
      return fn(detail::materialize(tier, env));
    });
  }
  if (!go) return;
  std::mt19937_64 rng(cfg.seed);
  std::vector<VarId> vars(xs.begin(), xs.end());
  for (int i = 0; i < cfg.trials; ++i)
    if (!fn(detail::random_interp(rng, vars, cfg))) return;
}

inline std::vector<Interpretation> gen_interpretations(const std::set<VarId>& xs,
                                                       const OracleConfig& cfg,
                                                       std::size_t limit = 100000) {
  std::vector<Interpretation> out;
  for_each_interpretation(xs, cfg, [&](const Interpretation& s) {
    out.push_back(s);
    return out.size() < limit;
  });
  return out;
}

namespace detail {

inline Language difference(const Language& a, const Language& b) {
  Language out;
  for (const Word& w : a)
    if (!b.count(w)) out.insert(w);
  return out;
}

inline Word least_word(const Language& l) {
  Word best = *l.begin();
  for (const Word& w : l)
    if (w.size() < best.size() || (w.size() == best.size() && w < best)) best = w;
  return best;
}

// Greedy counterexample minimization: drop whole words from the variable
// languages, then shorten surviving words one letter at a time, as long as
// the left-minus-right difference stays nonempty.
inline CounterExample shrink_cex(const Expr& e, const Expr& f, Interpretation sigma) {
  auto diff = [&](const Interpretation& s) { return difference(eval(e, s), eval(f, s)); };
  std::vector<VarId> vars;
  for (const auto& kv : sigma.map) vars.push_back(kv.first);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const VarId& v : vars) {
      Language snapshot = sigma.map[v];
      for (const Word& w : snapshot) {
        if (!sigma.map[v].count(w)) continue;
        Interpretation trial = sigma;
        trial.map[v].erase(w);
        if (!diff(trial).empty()) {
          sigma = std::move(trial);
          changed = true;
        }
      }
    }
    for (const VarId& v : vars) {
      bool shrunk = true;
      while (shrunk) {
        shrunk = false;
        Language snapshot = sigma.map[v];
        for (const Word& w : snapshot) {
          if (w.empty()) continue;
          for (std::size_t i = 0; i < w.size(); ++i) {
            Word shorter = w.substr(0, i) + w.substr(i + 1);
            if (sigma.map[v].count(shorter)) continue;
            Interpretation trial = sigma;
            trial.map[v].erase(w);
            trial.map[v].insert(shorter);
            if (!diff(trial).empty()) {
              sigma = std::move(trial);
              shrunk = true;
              changed = true;
              break;
            }
          }
          if (shrunk) break;
        }
      }
    }
  }
  Language d = diff(sigma);
  if (d.empty()) throw error("internal: counterexample lost during shrinking");
  return CounterExample{std::move(sigma), least_word(d)};
}

inline CounterExample finish_cex(const Expr& e, const Expr& f, Interpretation sigma) {
  CounterExample cex = shrink_cex(e, f, std::move(sigma));
  Language le = eval(e, cex.sigma), lf = eval(f, cex.sigma);
  if (!le.count(cex.witness) || lf.count(cex.witness))
    throw error("internal: spurious counterexample");
  return cex;
}

}  // namespace detail

// Searches for an interpretation under which the left language is not
// contained in the right one. Scans the same stream as
// for_each_interpretation, with the exhaustive stage run densely.
inline std::optional<CounterExample> refute(const Expr& e, const Expr& f,
                                            const OracleConfig& cfg) {
  std::set<VarId> xs = free_vars(e);
  for (const VarId& v : free_vars(f)) xs.insert(v);

  int ak = std::min(cfg.alphabet_size, 2), al = std::min(cfg.bound, 3),
      aw = std::min(cfg.words_per_var, 2);
  auto tier = detail::make_tier(xs, ak, al, aw, cfg.eps_free);
  if (tier.combinations() > cfg.exhaustive_cap)
    tier = detail::make_tier(xs, ak, std::min(cfg.bound, 2), 1, cfg.eps_free);
  if (tier.combinations() <= cfg.exhaustive_cap) {
    std::optional<CounterExample> found;
    detail::walk_exhaustive(tier, [&](const std::vector<std::uint32_t>& env) {
      std::map<VarId, std::uint32_t> m;
      for (std::size_t i = 0; i < tier.vars.size(); ++i) m[tier.vars[i]] = env[i];
      std::uint32_t me = tier.universe.eval(e, m), mf = tier.universe.eval(f, m);
      if (me & ~mf) {
        found = detail::finish_cex(e, f, detail::materialize(tier, env));
        return false;
      }
      return true;
    });
    if (found) return found;
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<VarId> vars(xs.begin(), xs.end());
  for (int i = 0; i < cfg.trials; ++i) {
    Interpretation s = detail::random_interp(rng, vars, cfg);
    if (!detail::difference(eval(e, s), eval(f, s)).empty())
      return detail::finish_cex(e, f, std::move(s));
  }
  return std::nullopt;
}

struct Verdict {
  std::optional<CounterExample> cex;
  bool witness_on_left = true;  // witness lies in lhs \ rhs (else rhs \ lhs)

  bool refuted() const { return cex.has_value(); }
};

inline Verdict equiv_bounded(const Expr& e, const Expr& f, const OracleConfig& cfg) {
  if (auto c = refute(e, f, cfg)) return {std::move(c), true};
  if (auto c = refute(f, e, cfg)) return {std::move(c), false};
  return {};
}

// Soundness check for a conditional equation: searches the stream for an
// interpretation satisfying the premise but not the conclusion.
inline std::optional<Interpretation> conditional_violation(
    const Expr& pl, const Expr& pr, const Expr& cl, const Expr& cr, const OracleConfig& cfg) {
  std::set<VarId> xs;
  for (const Expr& t : {pl, pr, cl, cr})
    for (const VarId& v : free_vars(t)) xs.insert(v);
  std::optional<Interpretation> bad;
  for_each_interpretation(xs, cfg, [&](const Interpretation& s) {
    if (eval(pl, s) == eval(pr, s) && eval(cl, s) != eval(cr, s)) {
      bad = s;
      return false;
    }
    return true;
  });
  return bad;
}

}  // namespace rklat
