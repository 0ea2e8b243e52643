// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Polynomial text syntax: variables are identifiers, '^' for powers, '*'
// optional between factors, rational literals 'p/q'. The printer emits the
// canonical form (terms in ring order, explicit '*'), and parse(print(p))
// reproduces p exactly.

#pragma once

#include <cctype>
#include <sstream>

#include "germ/polynomial.hpp"

namespace germ {

inline std::string print_monomial(const Ring& ring, const Expo& e) {
  std::ostringstream os;
  bool first = true;
  for (size_t v = 0; v < e.size(); ++v) {
    if (!e[v]) continue;
    if (!first) os << "*";
    os << ring.var_name(v);
    if (e[v] > 1) os << "^" << e[v];
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

inline std::string print_poly(const Polynomial& p) {
  if (p.is_zero_poly()) return "0";
  const Ring& R = *p.ring();
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rat c = t.coeff;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool constant = expo_is_one(t.exp);
    if (constant) {
      os << to_string(c);
    } else {
      if (!is_one(c)) os << to_string(c) << "*";
      os << print_monomial(R, t.exp);
    }
  }
  return os.str();
}

class PolyParser {
 public:
  PolyParser(RingPtr ring, std::string text) : ring_(std::move(ring)), s_(std::move(text)) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at column " + std::to_string(pos_ + 1) +
                                ": " + what + " in \"" + s_ + "\"");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Polynomial expression() {
    bool neg = false;
    skip_ws();
    if (eat('+')) {
    } else if (eat('-')) {
      neg = true;
    }
    Polynomial p = product();
    if (neg) p.negate_inplace();
    for (;;) {
      skip_ws();
      if (eat('+'))
        p = p + product();
      else if (eat('-'))
        p = p - product();
      else
        break;
    }
    return p;
  }

  Polynomial product() {
    Polynomial p = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        p = p * factor();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '(' ||
                 std::isdigit(static_cast<unsigned char>(c))) {
        p = p * factor();  // juxtaposition
      } else {
        break;
      }
    }
    return p;
  }

  Polynomial factor() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    Polynomial base(ring_);
    if (c == '(') {
      ++pos_;
      base = expression();
      if (!eat(')')) fail("expected ')'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      base = Polynomial::constant(ring_, number());
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      base = single_variable();
    } else {
      fail("unexpected character '" + std::string(1, c) + "'");
    }
    skip_ws();
    if (eat('^')) {
      skip_ws();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("expected exponent");
      unsigned long e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        e = e * 10 + static_cast<unsigned long>(s_[pos_++] - '0');
      base = pow(base, static_cast<unsigned>(e));
    }
    return base;
  }

  Rat number() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    Int num(s_.substr(start, pos_ - start));
    size_t save = pos_;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      size_t slash = pos_++;
      skip_ws();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        size_t dstart = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        Int den(s_.substr(dstart, pos_ - dstart));
        if (den == 0) {
          pos_ = slash;
          fail("zero denominator");
        }
        Rat q(num, den);
        q.canonicalize();
        return q;
      }
      pos_ = save;  // '/' not followed by an integer: not a rational literal
    } else {
      pos_ = save;
    }
    return Rat(num);
  }

  // Consumes one ring variable: the longest prefix of the letter/digit run
  // at the cursor that names a variable. "xy" is x then y (juxtaposition)
  // when the ring has x and y but no variable named "xy"; an exponent binds
  // to the single variable just consumed.
  Polynomial single_variable() {
    size_t start = pos_;
    size_t end = pos_;
    while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
      ++end;
    for (size_t len = end - start; len >= 1; --len) {
      std::string name = s_.substr(start, len);
      if (ring_->var_index(name) >= 0) {
        pos_ = start + len;
        return Polynomial::variable(ring_, name);
      }
    }
    fail("unknown variable in \"" + s_.substr(start, end - start) + "\"");
  }

  RingPtr ring_;
  std::string s_;
  size_t pos_ = 0;
};

inline Polynomial parse_poly(const RingPtr& ring, const std::string& text) {
  return PolyParser(ring, text).parse();
}

inline std::vector<Polynomial> parse_polys(const RingPtr& ring,
                                           const std::vector<std::string>& texts) {
  std::vector<Polynomial> ps;
  ps.reserve(texts.size());
  for (const auto& t : texts) ps.push_back(parse_poly(ring, t));
  return ps;
}

}  // namespace germ
