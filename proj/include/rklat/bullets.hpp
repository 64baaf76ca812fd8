#pragma once
// Marker-letter ("bullet") machinery. The bullet '@' is a fresh letter used
// to pad interpretations so that selected variables avoid the empty word,
// and to encode directed interpretations back over the base variables.
// Words with a common bullet-free projection are ordered by bullet
// insertion; each such class is a join-semilattice.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "rklat/eval.hpp"
#include "rklat/expr.hpp"
#include "rklat/lang.hpp"

namespace rklat {

inline Word erase_bullets(const Word& u) {
  Word out;
  for (char c : u)
    if (c != kBullet) out += c;
  return out;
}

// Bullet-run lengths around the bullet-free core: one count per gap
// (before the first letter, between letters, after the last), so the result
// has erase_bullets(u).size() + 1 entries.
inline std::vector<int> bullet_runs(const Word& u) {
  std::vector<int> runs{0};
  for (char c : u) {
    if (c == kBullet) ++runs.back();
    else runs.push_back(0);
  }
  return runs;
}

// u <= v iff v is u with extra bullets inserted: equal bullet-free cores and
// pointwise no-smaller bullet runs in every gap.
inline bool word_leq(const Word& u, const Word& v) {
  if (erase_bullets(u) != erase_bullets(v)) return false;
  std::vector<int> ru = bullet_runs(u), rv = bullet_runs(v);
  for (std::size_t i = 0; i < ru.size(); ++i)
    if (ru[i] > rv[i]) return false;
  return true;
}

// Least upper bound within an insertion class: per-gap maximum of the
// bullet runs. Words with different cores have no join.
inline std::optional<Word> word_join(const Word& u, const Word& v) {
  Word core = erase_bullets(u);
  if (core != erase_bullets(v)) return std::nullopt;
  std::vector<int> ru = bullet_runs(u), rv = bullet_runs(v);
  Word out;
  for (std::size_t i = 0; i < ru.size(); ++i) {
    out.append(std::max(ru[i], rv[i]), kBullet);
    if (i < core.size()) out += core[i];
  }
  return out;
}

// Encoding that prefixes every letter with a bullet; doubles the length.
inline Word bullet_encode(const Word& u) {
  Word out;
  for (char c : u) {
    if (c == kBullet) throw error("cannot encode a word that already contains the bullet");
    out += kBullet;
    out += c;
  }
  return out;
}

// Inverse image of the encoding on languages.
inline Language bullet_decode(const Language& l) {
  Language out;
  for (const Word& w : l) {
    if (w.size() % 2) continue;
    Word u;
    bool good = true;
    for (std::size_t i = 0; i < w.size(); i += 2) {
      if (w[i] != kBullet || w[i + 1] == kBullet) {
        good = false;
        break;
      }
      u += w[i + 1];
    }
    if (good) out.insert(u);
  }
  return out;
}

// Words decomposable into two-letter blocks, each a letter-bullet or
// bullet-letter pair; nonempty by definition.
inline bool is_valid_word(const Word& u) {
  if (u.empty() || u.size() % 2) return false;
  for (std::size_t i = 0; i < u.size(); i += 2) {
    bool lb = u[i] != kBullet && u[i + 1] == kBullet;
    bool bl = u[i] == kBullet && u[i + 1] != kBullet;
    if (!lb && !bl) return false;
  }
  return true;
}

namespace detail {

// All bullet paddings of `core` up to total length `budget`, in length-lex
// order of the padded words.
inline void paddings_of(const Word& core, int budget, Language& out) {
  int gaps = static_cast<int>(core.size()) + 1;
  int spare = budget - static_cast<int>(core.size());
  if (spare < 0) return;
  std::vector<int> runs(gaps, 0);
  auto emit = [&] {
    Word w;
    for (int i = 0; i < gaps; ++i) {
      w.append(runs[i], kBullet);
      if (i + 1 < gaps) w += core[i];
    }
    out.insert(w);
  };
  auto rec = [&](auto&& self, int gap, int left) -> void {
    if (gap == gaps) {
      emit();
      return;
    }
    for (int k = 0; k <= left; ++k) {
      runs[gap] = k;
      self(self, gap + 1, left - k);
      runs[gap] = 0;
    }
  };
  rec(rec, 0, spare);
}

}  // namespace detail

// Bullet-padded interpretation: every word whose bullet-free projection lies
// in the base language, subject to the budget, with the empty word excluded
// for the selected variables. Images are upward closed for word_leq within
// the budget.
inline Interpretation bullet_pad_interp(const Interpretation& sigma,
                                        const std::set<VarId>& nonempty_vars, int budget) {
  if (sigma.alphabet.find(kBullet) != std::string::npos)
    throw error("base interpretation already uses the bullet letter");
  Interpretation out;
  out.alphabet = sigma.alphabet + kBullet;
  std::sort(out.alphabet.begin(), out.alphabet.end());
  out.bound = budget;
  for (const auto& [v, lang] : sigma.map) {
    Language padded;
    for (const Word& core : lang) detail::paddings_of(core, budget, padded);
    if (nonempty_vars.count(v)) padded.erase(kEpsilon);
    out.map[v] = std::move(padded);
  }
  return out;
}

// Interpretation over X from one over X x 2: forward words are
// bullet-encoded, backward words are encoded then reversed. Requires every
// image to avoid the empty word; the bound doubles with the encoding.
inline Interpretation encode_directed_interp(const Interpretation& sigma) {
  Interpretation out;
  out.alphabet = sigma.alphabet + kBullet;
  std::sort(out.alphabet.begin(), out.alphabet.end());
  out.alphabet.erase(std::unique(out.alphabet.begin(), out.alphabet.end()), out.alphabet.end());
  out.bound = 2 * sigma.bound;
  for (const auto& [v, lang] : sigma.map) {
    if (v.dir == Dir::None) throw error("undirected variable: " + to_string(v));
    if (lang.count(kEpsilon))
      throw error("directed interpretation must avoid the empty word (variable " +
                  to_string(v) + ")");
    Language& target = out.map[VarId{v.name, Dir::None}];
    for (const Word& w : lang) {
      Word enc = bullet_encode(w);
      target.insert(v.dir == Dir::Fwd ? enc : mirror_word(enc));
    }
  }
  return out;
}

}  // namespace rklat
