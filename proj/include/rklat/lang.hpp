#pragma once
// Finite-language model: words are strings of single-character letters,
// languages are finite word sets, and an interpretation maps variables to
// languages over a declared alphabet, exact up to a length bound.
//
// The reserved marker letter (serialized '@') is distinct from every user
// letter; user alphabets draw from [a-z] excluding '@'.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "rklat/expr.hpp"

namespace rklat {

using Word = std::string;
using Language = std::set<Word>;

inline constexpr char kBullet = '@';
inline const Word kEpsilon{};

inline Word mirror_word(const Word& u) { return {u.rbegin(), u.rend()}; }

inline Language mirror_lang(const Language& l) {
  Language out;
  for (const Word& u : l) out.insert(mirror_word(u));
  return out;
}

struct Interpretation {
  std::string alphabet;           // sorted unique letters; may include '@'
  std::map<VarId, Language> map;  // total on its declared variable set
  int bound = 0;                  // exact for words of length <= bound

  bool has_var(const VarId& v) const { return map.count(v) != 0; }
};

inline void validate(const Interpretation& s) {
  for (const auto& [v, lang] : s.map) {
    for (const Word& w : lang) {
      if (static_cast<int>(w.size()) > s.bound)
        throw error("interpretation word exceeds bound: " + to_string(v) + " <- " + w);
      for (char c : w)
        if (s.alphabet.find(c) == std::string::npos)
          throw error(std::string("letter '") + c + "' not in declared alphabet");
    }
  }
}

inline std::string first_letters(int k) {
  std::string s;
  for (int i = 0; i < k; ++i) s += static_cast<char>('a' + i);
  return s;
}

// -- text format -------------------------------------------------------------
//
//   alphabet = { a, b }
//   bound = 6
//   x = { ab, ba, _ }
//
// '_' denotes the empty word; the marker letter serializes as '@'.

inline std::string format_word(const Word& w) { return w.empty() ? "_" : w; }

inline std::string format_language(const Language& l) {
  std::string out = "{";
  bool first = true;
  for (const Word& w : l) {
    out += first ? " " : ", ";
    out += format_word(w);
    first = false;
  }
  out += l.empty() ? "}" : " }";
  return out;
}

inline std::string write_interpretation(const Interpretation& s) {
  std::ostringstream out;
  out << "alphabet = {";
  for (std::size_t i = 0; i < s.alphabet.size(); ++i)
    out << (i ? ", " : " ") << s.alphabet[i];
  out << (s.alphabet.empty() ? "}\n" : " }\n");
  out << "bound = " << s.bound << "\n";
  for (const auto& [v, lang] : s.map)
    out << to_string(v) << " = " << format_language(lang) << "\n";
  return out.str();
}

namespace detail {

inline std::string interp_token(std::istringstream& in) {
  std::string t;
  in >> t;
  return t;
}

inline Language parse_language_body(const std::string& body, int line_no) {
  Language lang;
  std::string item;
  auto flush = [&] {
    if (item.empty()) return;
    if (item == "_") lang.insert(kEpsilon);
    else lang.insert(item);
    item.clear();
  };
  for (char c : body) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (std::islower(static_cast<unsigned char>(c)) || c == kBullet || c == '_') {
      item += c;
    } else {
      throw error("interpretation line " + std::to_string(line_no) +
                  ": bad character in word list");
    }
  }
  flush();
  return lang;
}

}  // namespace detail

inline Interpretation read_interpretation(const std::string& text) {
  Interpretation s;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool saw_alphabet = false, saw_bound = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw error("interpretation line " + std::to_string(line_no) + ": expected '='");
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    key.erase(std::remove_if(key.begin(), key.end(),
                             [](unsigned char c) { return std::isspace(c); }),
              key.end());
    if (key == "alphabet") {
      for (char c : val) {
        if (std::islower(static_cast<unsigned char>(c)) || c == kBullet) s.alphabet += c;
        else if (c != '{' && c != '}' && c != ',' && !std::isspace(static_cast<unsigned char>(c)))
          throw error("interpretation line " + std::to_string(line_no) + ": bad alphabet");
      }
      std::sort(s.alphabet.begin(), s.alphabet.end());
      s.alphabet.erase(std::unique(s.alphabet.begin(), s.alphabet.end()), s.alphabet.end());
      saw_alphabet = true;
    } else if (key == "bound") {
      s.bound = std::stoi(val);
      if (s.bound < 0) throw error("bound must be nonnegative");
      saw_bound = true;
    } else {
      if (key.empty()) throw error("interpretation line " + std::to_string(line_no) + ": empty variable");
      Dir d = Dir::None;
      if (key.size() > 2 && key[key.size() - 2] == '!') {
        char tag = key.back();
        if (tag == 'f') d = Dir::Fwd;
        else if (tag == 'b') d = Dir::Bwd;
        else throw error("bad direction tag on variable " + key);
        key.erase(key.size() - 2);
      }
      std::string body = val;
      body.erase(std::remove_if(body.begin(), body.end(),
                                [](char c) { return c == '{' || c == '}'; }),
                 body.end());
      s.map[VarId{key, d}] = detail::parse_language_body(body, line_no);
    }
  }
  if (!saw_alphabet || !saw_bound)
    throw error("interpretation file must declare alphabet and bound");
  validate(s);
  return s;
}

}  // namespace rklat
