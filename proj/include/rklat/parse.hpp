#pragma once
// Recursive-descent parser for the concrete term syntax.
//
//   expr  := inter ("+" inter)*
//   inter := cat ("&" cat)*
//   cat   := post ("." post)*
//   post  := atom ("^+" | "^*" | "'")*
//   atom  := "0" | "1" | ident | ident "!f" | ident "!b" | "(" expr ")"
//
// Whitespace is insignificant between tokens. Identifiers are nonempty
// tokens over [a-zA-Z0-9_]; names starting with '_' are reserved for
// internal use and rejected unless ParseOptions::allow_reserved is set.
// "e^*" is desugared to 1 + e^+ while parsing. The extended reader used by
// top elimination additionally accepts the keyword "top".

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "rklat/expr.hpp"

namespace rklat {

struct ParseError : error {
  std::size_t offset;
  std::vector<std::string> expected;
  ParseError(std::string msg, std::size_t off, std::vector<std::string> exp)
      : error(std::move(msg)), offset(off), expected(std::move(exp)) {}
};

struct ParseOptions {
  bool allow_top = false;       // accept the "top" keyword
  bool allow_reserved = false;  // accept identifiers starting with '_'
};

namespace detail {

inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
 public:
  Parser(std::string_view text, ParseOptions opts) : text_(text), opts_(opts) {}

  Expr run() {
    skip_ws();
    Expr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected input", {"end of input"});
    return e;
  }

 private:
  std::string_view text_;
  ParseOptions opts_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) {
    std::string msg = "syntax error at offset " + std::to_string(pos_) + ": " + what;
    if (!expected.empty()) {
      msg += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) msg += ", ";
        msg += expected[i];
      }
      msg += ")";
    }
    throw ParseError(msg, pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr parse_sum() {
    Expr e = parse_inter();
    while (eat('+')) e = sum(e, parse_inter());
    return e;
  }

  Expr parse_inter() {
    Expr e = parse_cat();
    while (eat('&')) e = inter(e, parse_cat());
    return e;
  }

  Expr parse_cat() {
    Expr e = parse_post();
    while (eat('.')) e = prod(e, parse_post());
    return e;
  }

  Expr parse_post() {
    Expr e = parse_atom();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '\'') {
        ++pos_;
        e = mirror(e);
      } else if (pos_ + 1 < text_.size() && text_[pos_] == '^') {
        char c = text_[pos_ + 1];
        if (c == '+') {
          pos_ += 2;
          e = plus(e);
        } else if (c == '*') {
          pos_ += 2;
          e = star(e);
        } else {
          ++pos_;
          fail("bad iteration operator", {"^+", "^*"});
        }
      } else {
        break;
      }
    }
    return e;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input", {"0", "1", "identifier", "("});
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_sum();
      if (!eat(')')) fail("unbalanced parenthesis", {")"});
      return e;
    }
    if (!ident_char(c)) fail("unexpected character", {"0", "1", "identifier", "("});
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name == "0") return zero();
    if (name == "1") return one();
    if (opts_.allow_top && name == "top") return top();
    if (name[0] == '_' && !opts_.allow_reserved) {
      pos_ = start;
      fail("reserved identifier '" + name + "'", {"identifier not starting with '_'"});
    }
    Dir d = Dir::None;
    if (pos_ + 1 < text_.size() && text_[pos_] == '!') {
      char tag = text_[pos_ + 1];
      if (tag == 'f') d = Dir::Fwd;
      else if (tag == 'b') d = Dir::Bwd;
      else fail("bad direction tag", {"!f", "!b"});
      pos_ += 2;
    }
    return var(std::move(name), d);
  }
};

}  // namespace detail

inline Expr parse(std::string_view text, ParseOptions opts = {}) {
  return detail::Parser(text, opts).run();
}

// Reader for terms containing the top constant; only top elimination
// accepts these.
inline Expr parse_with_top(std::string_view text, ParseOptions opts = {}) {
  opts.allow_top = true;
  return detail::Parser(text, opts).run();
}

}  // namespace rklat
