// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Multivariate polynomials with exact rational coefficients. Terms are kept
// sorted strictly descending in the ring order; no zero coefficients are
// stored; the zero polynomial has an empty term list.

#pragma once

#include <cassert>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "germ/numeric.hpp"
#include "germ/ring.hpp"

namespace germ {

struct Term {
  Expo exp;
  Rat coeff;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  // From an unordered term list; combines duplicates, drops zeros, sorts.
  Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return ring_->cmp(a.exp, b.exp) > 0; });
    terms_.reserve(terms.size());
    for (auto& t : terms) {
      if (!terms_.empty() && terms_.back().exp == t.exp)
        terms_.back().coeff += t.coeff;
      else
        terms_.push_back(std::move(t));
      if (!terms_.empty() && is_zero(terms_.back().coeff)) terms_.pop_back();
    }
  }

  static Polynomial zero(const RingPtr& ring) { return Polynomial(ring); }

  static Polynomial constant(const RingPtr& ring, Rat c) {
    Polynomial p(ring);
    if (!is_zero(c)) p.terms_.push_back({expo_zero(ring->nvars()), std::move(c)});
    return p;
  }

  static Polynomial monomial(const RingPtr& ring, Expo e, Rat c = Rat(1)) {
    Polynomial p(ring);
    if (!is_zero(c)) p.terms_.push_back({std::move(e), std::move(c)});
    return p;
  }

  static Polynomial variable(const RingPtr& ring, size_t i) {
    Expo e = expo_zero(ring->nvars());
    e.at(i) = 1;
    return monomial(ring, std::move(e));
  }

  static Polynomial variable(const RingPtr& ring, const std::string& name) {
    int i = ring->var_index(name);
    if (i < 0) throw std::invalid_argument("unknown variable " + name);
    return variable(ring, static_cast<size_t>(i));
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero_poly() const { return terms_.empty(); }
  size_t nterms() const { return terms_.size(); }

  const Term& lead() const {
    assert(!terms_.empty());
    return terms_.front();
  }
  const Expo& lead_exp() const { return lead().exp; }
  const Rat& lead_coeff() const { return lead().coeff; }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && expo_is_one(terms_[0].exp));
  }
  bool is_unit_constant() const { return terms_.size() == 1 && expo_is_one(terms_[0].exp); }

  Rat constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::logic_error("not a constant polynomial");
    return terms_[0].coeff;
  }

  int64_t total_degree() const {
    int64_t d = -1;
    for (const auto& t : terms_) d = std::max(d, Ring::total_degree(t.exp));
    return d;  // -1 for the zero polynomial
  }

  int64_t degree_in(size_t var) const {
    int64_t d = -1;
    for (const auto& t : terms_) d = std::max<int64_t>(d, t.exp[var]);
    return d;
  }

  bool depends_on(size_t var) const {
    for (const auto& t : terms_)
      if (t.exp[var]) return true;
    return false;
  }

  // Mutating helpers used by the arithmetic layer; invariants preserved.
  void negate_inplace() {
    for (auto& t : terms_) t.coeff = -t.coeff;
  }
  void scale_inplace(const Rat& c) {
    if (is_zero(c)) {
      terms_.clear();
      return;
    }
    for (auto& t : terms_) t.coeff *= c;
  }

  friend Polynomial add_scaled(const Polynomial& a, const Polynomial& b, const Rat& c,
                               const Expo* shift);

  bool operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].exp != o.terms_[i].exp || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

inline void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (a.ring() != b.ring() && !(*a.ring() == *b.ring()))
    throw std::invalid_argument("ring mismatch");
}

// r = a + c * x^shift * b  (shift may be null). Single merge pass.
inline Polynomial add_scaled(const Polynomial& a, const Polynomial& b, const Rat& c,
                             const Expo* shift) {
  require_same_ring(a, b);
  Polynomial r(a.ring());
  const Ring& R = *a.ring();
  r.terms_.reserve(a.nterms() + b.nterms());
  size_t i = 0, j = 0;
  Expo be;
  while (i < a.terms().size() || j < b.terms().size()) {
    int which;
    if (i >= a.terms().size())
      which = 1;
    else if (j >= b.terms().size())
      which = -1;
    else {
      be = shift ? expo_mul(b.terms()[j].exp, *shift) : b.terms()[j].exp;
      which = -R.cmp(a.terms()[i].exp, be);
    }
    if (which < 0) {
      r.terms_.push_back(a.terms()[i++]);
    } else {
      const Term& tb = b.terms()[j];
      Expo e = shift ? expo_mul(tb.exp, *shift) : tb.exp;
      Rat cc = tb.coeff * c;
      if (which == 0) {
        cc += a.terms()[i].coeff;
        ++i;
      }
      ++j;
      if (!is_zero(cc)) r.terms_.push_back({std::move(e), std::move(cc)});
    }
  }
  return r;
}

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  return add_scaled(a, b, Rat(1), nullptr);
}
inline Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return add_scaled(a, b, Rat(-1), nullptr);
}
inline Polynomial operator-(const Polynomial& a) {
  Polynomial r = a;
  r.negate_inplace();
  return r;
}

inline Polynomial mul_term(const Polynomial& a, const Expo& e, const Rat& c) {
  Polynomial r(a.ring());
  return add_scaled(r, a, c, &e);
}

inline Polynomial operator*(const Polynomial& a, const Rat& c) {
  Polynomial r = a;
  r.scale_inplace(c);
  return r;
}
inline Polynomial operator*(const Rat& c, const Polynomial& a) { return a * c; }

inline Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  if (a.is_zero_poly() || b.is_zero_poly()) return Polynomial::zero(a.ring());
  // Accumulate into a hash map, then normalize once.
  std::unordered_map<Expo, Rat, ExpoHash> acc;
  acc.reserve(a.nterms() * b.nterms());
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      Expo e = expo_mul(ta.exp, tb.exp);
      auto it = acc.find(e);
      if (it == acc.end())
        acc.emplace(std::move(e), ta.coeff * tb.coeff);
      else
        it->second += ta.coeff * tb.coeff;
    }
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (!is_zero(c)) ts.push_back({e, std::move(c)});
  return Polynomial(a.ring(), std::move(ts));
}

inline Polynomial pow(const Polynomial& a, unsigned e) {
  Polynomial r = Polynomial::constant(a.ring(), Rat(1));
  Polynomial base = a;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

enum class ArithOp { Add, Sub, Mul };

inline Polynomial arith(const Polynomial& a, const Polynomial& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  throw std::logic_error("bad op");
}

inline Polynomial differentiate(const Polynomial& p, size_t var) {
  if (var >= p.ring()->nvars()) throw std::invalid_argument("unknown variable");
  std::vector<Term> ts;
  for (const auto& t : p.terms()) {
    if (t.exp[var] == 0) continue;
    Expo e = t.exp;
    Rat c = t.coeff * Rat(static_cast<long>(e[var]));
    e[var] -= 1;
    ts.push_back({std::move(e), std::move(c)});
  }
  return Polynomial(p.ring(), std::move(ts));
}

inline Polynomial differentiate(const Polynomial& p, const std::string& var) {
  int i = p.ring()->var_index(var);
  if (i < 0) throw std::invalid_argument("unknown variable " + var);
  return differentiate(p, static_cast<size_t>(i));
}

// Composite: every variable occurring in p must be mapped. Images must share
// one ring.
inline Polynomial substitute(const Polynomial& p,
                             const std::vector<std::optional<Polynomial>>& images,
                             const RingPtr& target) {
  Polynomial r = Polynomial::zero(target);
  for (const auto& t : p.terms()) {
    Polynomial m = Polynomial::constant(target, t.coeff);
    for (size_t v = 0; v < t.exp.size(); ++v) {
      if (t.exp[v] == 0) continue;
      if (!images[v]) throw std::invalid_argument("incomplete substitution map for variable " +
                                                  p.ring()->var_name(v));
      m = m * pow(*images[v], t.exp[v]);
    }
    r = r + m;
  }
  return r;
}

inline Polynomial substitute(const Polynomial& p,
                             const std::map<std::string, Polynomial>& map) {
  RingPtr target;
  for (const auto& [k, v] : map) {
    (void)k;
    if (!target)
      target = v.ring();
    else
      require_same_ring(Polynomial(target), v);
  }
  if (!target) target = p.ring();
  std::vector<std::optional<Polynomial>> images(p.ring()->nvars());
  for (size_t v = 0; v < p.ring()->nvars(); ++v) {
    auto it = map.find(p.ring()->var_name(v));
    if (it != map.end()) images[v] = it->second;
    else if (*p.ring() == *target || p.ring()->same_vars(*target))
      images[v] = Polynomial::variable(target, v);
  }
  return substitute(p, images, target);
}

// Common weighted degree of all terms, or nullopt when inhomogeneous.
// The zero polynomial is compatible with every degree; callers treat
// a returned value only when has_value() && !zero.
struct WeightedDegree {
  bool zero = false;          // p == 0: compatible with all degrees
  std::optional<int64_t> deg;  // engaged iff weighted homogeneous
};

inline WeightedDegree weighted_degree(const Polynomial& p, const std::vector<int64_t>& w) {
  for (int64_t wi : w)
    if (wi <= 0) throw std::invalid_argument("weights must be positive");
  if (w.size() != p.ring()->nvars()) throw std::invalid_argument("weight count mismatch");
  WeightedDegree r;
  if (p.is_zero_poly()) {
    r.zero = true;
    return r;
  }
  int64_t d = p.ring()->weighted_degree(p.terms()[0].exp, w);
  for (const auto& t : p.terms())
    if (p.ring()->weighted_degree(t.exp, w) != d) return r;  // inhomogeneous
  r.deg = d;
  return r;
}

// Substituting rational values for all variables.
inline Rat evaluate(const Polynomial& p, const std::vector<Rat>& point) {
  if (point.size() != p.ring()->nvars()) throw std::invalid_argument("point dimension mismatch");
  Rat r(0);
  for (const auto& t : p.terms()) {
    Rat m = t.coeff;
    for (size_t v = 0; v < t.exp.size(); ++v)
      if (t.exp[v]) m *= pow(point[v], t.exp[v]);
    r += m;
  }
  return r;
}

// Exact division by a single binomial or general divisor when the division
// is known to be exact; throws if a remainder appears.
inline Polynomial divide_exact(const Polynomial& num, const Polynomial& den) {
  require_same_ring(num, den);
  if (den.is_zero_poly()) throw std::domain_error("division by zero polynomial");
  Polynomial r = num;
  Polynomial q(num.ring());
  std::vector<Term> qts;
  while (!r.is_zero_poly()) {
    if (!expo_divides(den.lead_exp(), r.lead_exp()))
      throw std::domain_error("division not exact");
    Expo e = expo_div(r.lead_exp(), den.lead_exp());
    Rat c = r.lead_coeff() / den.lead_coeff();
    qts.push_back({e, c});
    r = add_scaled(r, den, -c, &e);
  }
  return Polynomial(num.ring(), std::move(qts));
}

// Integer content of the coefficient list (gcd of numerators when all
// denominators are 1); general rational content = gcd(nums)/lcm(dens).
inline Rat rational_content(const Polynomial& p) {
  if (p.is_zero_poly()) return Rat(0);
  Int g(0), l(1);
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den().get_mpz_t());
  }
  Rat c(g, l);
  c.canonicalize();
  return c;
}

// Monic form (leading coefficient 1); zero stays zero.
inline Polynomial monic(const Polynomial& p) {
  if (p.is_zero_poly()) return p;
  return p * (Rat(1) / p.lead_coeff());
}

inline size_t hash_poly(const Polynomial& p) {
  size_t h = 0;
  ExpoHash eh;
  for (const auto& t : p.terms()) h = h * 1000003 + eh(t.exp) * 31 + hash_rat(t.coeff);
  return h;
}

}  // namespace germ
