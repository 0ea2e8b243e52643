// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Coefficient fields for the series layer: the rationals and the quadratic
// extension Q(w) with w^2 + w + 1 = 0, whose elements are stored as rational
// pairs a + b w. This is the only algebraic extension in the toolkit.

#pragma once

#include "germ/numeric.hpp"

namespace germ {

struct RatField {
  using Elem = Rat;
  static Elem zero() { return Rat(0); }
  static Elem one() { return Rat(1); }
  static Elem from_rat(const Rat& q) { return q; }
  static bool is_zero(const Elem& a) { return sgn(a) == 0; }
  static Elem add(const Elem& a, const Elem& b) { return a + b; }
  static Elem sub(const Elem& a, const Elem& b) { return a - b; }
  static Elem neg(const Elem& a) { return -a; }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static Elem div(const Elem& a, const Elem& b) {
    if (is_zero(b)) throw std::domain_error("division by zero");
    return a / b;
  }
  static std::string str(const Elem& a) { return to_string(a); }
};

// a + b w with w^2 = -1 - w (primitive cube root of unity).
struct Eisenstein {
  Rat a, b;
  Eisenstein() : a(0), b(0) {}
  Eisenstein(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}
  bool operator==(const Eisenstein& o) const { return a == o.a && b == o.b; }
};

struct EisensteinField {
  using Elem = Eisenstein;
  static Elem zero() { return {}; }
  static Elem one() { return {Rat(1), Rat(0)}; }
  static Elem omega() { return {Rat(0), Rat(1)}; }
  static Elem from_rat(const Rat& q) { return {q, Rat(0)}; }
  static bool is_zero(const Elem& x) { return sgn(x.a) == 0 && sgn(x.b) == 0; }
  static Elem add(const Elem& x, const Elem& y) { return {x.a + y.a, x.b + y.b}; }
  static Elem sub(const Elem& x, const Elem& y) { return {x.a - y.a, x.b - y.b}; }
  static Elem neg(const Elem& x) { return {-x.a, -x.b}; }
  static Elem mul(const Elem& x, const Elem& y) {
    // (a + bw)(c + dw) = ac + (ad + bc) w + bd w^2, w^2 = -1 - w
    Rat ac = x.a * y.a, bd = x.b * y.b;
    return {ac - bd, x.a * y.b + x.b * y.a - bd};
  }
  static Elem div(const Elem& x, const Elem& y) {
    // conjugate: a + b wbar = (a - b) - b w ; norm = a^2 - a b + b^2
    Rat n = y.a * y.a - y.a * y.b + y.b * y.b;
    if (sgn(n) == 0) throw std::domain_error("division by zero");
    Elem conj{y.a - y.b, -y.b};
    Elem num = mul(x, conj);
    return {num.a / n, num.b / n};
  }
  static std::string str(const Elem& x) {
    if (sgn(x.b) == 0) return to_string(x.a);
    std::string s;
    if (sgn(x.a) != 0) s += to_string(x.a) + (sgn(x.b) > 0 ? "+" : "");
    if (x.b == 1)
      s += "w";
    else if (x.b == -1)
      s += "-w";
    else
      s += to_string(x.b) + "*w";
    return s;
  }
};

}  // namespace germ
