// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Ideal-level constructions: sum, colon, saturation, elimination, Krull
// dimension, zero-dimensional quotient bases, local colength, radical
// membership certificates and rational point enumeration.
//
// Local colength never uses local orderings: for ideals homogeneous under
// some positive weight vector (found automatically), the origin is the only
// point of a finite staircase and the global count is the local one; all
// other inputs go through dim O/(I + m^N) stabilization, where two equal
// consecutive values certify the exact local value.

#pragma once

#include <set>

#include "germ/module.hpp"

namespace germ {

// ---------------------------------------------------------------------------
// ring plumbing

// Image of p in `target` where variable i of p.ring() maps to variable
// var_map[i] of target (or to nothing when var_map[i] < 0; then p must not
// depend on variable i).
inline Polynomial map_vars(const Polynomial& p, const RingPtr& target,
                           const std::vector<int>& var_map) {
  std::vector<Term> ts;
  ts.reserve(p.nterms());
  for (const auto& t : p.terms()) {
    Expo e = expo_zero(target->nvars());
    for (size_t v = 0; v < t.exp.size(); ++v) {
      if (t.exp[v] == 0) continue;
      if (var_map[v] < 0) throw std::invalid_argument("polynomial depends on a dropped variable");
      e[static_cast<size_t>(var_map[v])] += t.exp[v];
    }
    ts.push_back({std::move(e), t.coeff});
  }
  return Polynomial(target, std::move(ts));
}

inline std::vector<int> identity_var_map(const RingPtr& from, const RingPtr& to) {
  std::vector<int> m(from->nvars());
  for (size_t i = 0; i < from->nvars(); ++i) m[i] = to->var_index(from->var_name(i));
  return m;
}

// Transport a polynomial between rings that share variable NAMES (orders may
// differ; variables present in `from` but not `to` must not occur in p).
inline Polynomial transport(const Polynomial& p, const RingPtr& to) {
  return map_vars(p, to, identity_var_map(p.ring(), to));
}

inline Ideal transport(const Ideal& I, const RingPtr& to) {
  std::vector<Polynomial> gens;
  gens.reserve(I.gens().size());
  for (const auto& g : I.gens()) gens.push_back(transport(g, to));
  return Ideal(to, std::move(gens));
}

// ---------------------------------------------------------------------------
// sums, colon, saturation, elimination

inline Ideal ideal_sum(const Ideal& A, const Ideal& B) {
  std::vector<Polynomial> gens = A.gens();
  for (const auto& g : B.gens()) gens.push_back(transport(g, A.ring()));
  return Ideal(A.ring(), std::move(gens));
}

inline Ideal ideal_sum(const Ideal& A, const std::vector<Polynomial>& more) {
  std::vector<Polynomial> gens = A.gens();
  gens.insert(gens.end(), more.begin(), more.end());
  return Ideal(A.ring(), std::move(gens));
}

// I : (g) = { h : h g in I }, via the syzygy module of the row [gens(I), g];
// the last coordinates of its generators generate the colon ideal.
inline Ideal colon(const Ideal& I, const Polynomial& g) {
  if (g.is_zero_poly()) throw std::invalid_argument("colon by zero");
  if (I.gens().empty()) return Ideal::zero(I.ring());
  PolyMatrix row(I.ring(), 1, I.gens().size() + 1);
  for (size_t j = 0; j < I.gens().size(); ++j) row.at(0, j) = I.gens()[j];
  row.at(0, I.gens().size()) = transport(g, I.ring());
  PolyMatrix S = syzygies(row);
  std::vector<Polynomial> gens;
  for (size_t j = 0; j < S.cols(); ++j) {
    Polynomial h = S.at(I.gens().size(), j);
    if (!h.is_zero_poly()) gens.push_back(std::move(h));
  }
  for (const auto& gi : I.gens()) gens.push_back(gi);  // I is contained in I:(g)
  return Ideal(I.ring(), std::move(gens));
}

// Eliminates the named variables: I  intersect  Q[vars \ drop]. Result lives
// in the original ring; generators do not involve the dropped variables.
inline Ideal eliminate(const Ideal& I, const std::vector<std::string>& drop) {
  if (drop.empty()) return I;
  const RingPtr& R = I.ring();
  std::vector<std::string> front, back;
  for (const auto& v : drop) {
    if (R->var_index(v) < 0) throw std::invalid_argument("unknown variable " + v);
    front.push_back(v);
  }
  for (const auto& v : R->vars())
    if (std::find(front.begin(), front.end(), v) == front.end()) back.push_back(v);
  std::vector<std::string> perm = front;
  perm.insert(perm.end(), back.begin(), back.end());
  RingPtr elim_ring = make_ring(perm, MonomialOrder::elimination_block(front.size()));
  Ideal J = transport(I, elim_ring);
  std::vector<Polynomial> kept;
  for (const auto& b : J.groebner()) {
    bool free_of_drop = true;
    for (size_t v = 0; v < front.size() && free_of_drop; ++v)
      if (b.depends_on(v)) free_of_drop = false;
    if (free_of_drop) kept.push_back(transport(b, R));
  }
  return Ideal(R, std::move(kept));
}

struct Saturation {
  Ideal ideal;
  int exponent = 0;  // least k with (I : g^k) == (I : g^infinity)
};

// (I : g^infinity) by tag-variable elimination of I + (1 - z g); the
// stabilizing exponent is recovered by a follow-up colon loop.
inline Saturation saturate(const Ideal& I, const Polynomial& g, bool want_exponent = true,
                           int exponent_cap = 64) {
  if (g.is_zero_poly()) throw std::invalid_argument("saturation by zero");
  const RingPtr& R = I.ring();
  std::vector<std::string> vars = R->vars();
  std::string tag = "zsat_";
  while (R->var_index(tag) >= 0) tag += "_";
  std::vector<std::string> ext_vars = {tag};
  ext_vars.insert(ext_vars.end(), vars.begin(), vars.end());
  RingPtr ext = make_ring(ext_vars, MonomialOrder::elimination_block(1));
  std::vector<Polynomial> gens;
  for (const auto& gi : I.gens()) gens.push_back(transport(gi, ext));
  Polynomial one = Polynomial::constant(ext, Rat(1));
  gens.push_back(one - Polynomial::variable(ext, tag) * transport(g, ext));
  Ideal J(ext, std::move(gens));
  std::vector<Polynomial> kept;
  for (const auto& b : J.groebner())
    if (!b.depends_on(0)) kept.push_back(transport(b, R));
  Saturation out{Ideal(R, std::move(kept)), 0};
  if (want_exponent) {
    Ideal Jk = I;
    int k = 0;
    while (!ideal_equal(Jk, out.ideal)) {
      Jk = colon(Jk, g);
      if (++k > exponent_cap) throw std::runtime_error("saturation exponent exceeds cap");
    }
    out.exponent = k;
  }
  return out;
}

// (I : J^infinity) for an ideal J: sequential saturation by its generators.
inline Ideal saturate_ideal(const Ideal& I, const Ideal& J) {
  Ideal out = I;
  for (const auto& g : J.gens())
    if (!g.is_zero_poly()) out = saturate(out, transport(g, I.ring()), false).ideal;
  return out;
}

// True iff g vanishes on V(I): 1 in I + (1 - z g).
inline bool radical_membership(const Polynomial& g, const Ideal& I) {
  if (g.is_zero_poly()) return true;
  if (contains(I, g)) return true;  // cheap pre-check
  const RingPtr& R = I.ring();
  std::string tag = "zrad_";
  while (R->var_index(tag) >= 0) tag += "_";
  std::vector<std::string> ext_vars = {tag};
  ext_vars.insert(ext_vars.end(), R->vars().begin(), R->vars().end());
  RingPtr ext = make_ring(ext_vars, MonomialOrder::elimination_block(1));
  std::vector<Polynomial> gens;
  for (const auto& gi : I.gens()) gens.push_back(transport(gi, ext));
  gens.push_back(Polynomial::constant(ext, Rat(1)) -
                 Polynomial::variable(ext, tag) * transport(g, ext));
  return Ideal(ext, std::move(gens)).is_unit();
}

// True iff V(I) == V(J): every generator of each ideal vanishes on the
// other's zero set.
inline bool same_zero_set(const Ideal& I, const Ideal& J) {
  for (const auto& g : J.gens())
    if (!radical_membership(transport(g, I.ring()), I)) return false;
  for (const auto& g : I.gens())
    if (!radical_membership(transport(g, J.ring()), J)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// staircase utilities and dimension

// Minimal generators of the leading term ideal.
inline std::vector<Expo> lead_exponents(const Ideal& I) {
  std::vector<Expo> leads;
  for (const auto& b : I.groebner()) leads.push_back(b.lead_exp());
  return leads;
}

// Krull dimension of V(I) from maximal independent variable sets modulo the
// leading term ideal. Unit ideal: -1 (empty variety).
inline int krull_dim(const Ideal& I) {
  if (I.is_unit()) return -1;
  size_t n = I.ring()->nvars();
  if (n > 24) throw std::invalid_argument("krull_dim: too many variables");
  std::vector<uint32_t> supports;
  for (const auto& e : lead_exponents(I)) {
    uint32_t m = 0;
    for (size_t i = 0; i < n; ++i)
      if (e[i]) m |= 1u << i;
    supports.push_back(m);
  }
  int best = 0;
  for (uint32_t s = 0; s < (1u << n); ++s) {
    bool independent = true;
    for (uint32_t sup : supports)
      if ((sup & ~s) == 0) {
        independent = false;
        break;
      }
    if (independent) best = std::max(best, __builtin_popcount(s));
  }
  return best;
}

struct QuotientBasis {
  Ideal ideal;
  std::vector<Expo> monomials;  // standard monomials, ascending ring order
};

namespace detail {

// Enumerates exponents below `bounds` not divisible by any lead. Throws if
// some variable has no pure power bound (infinite staircase).
inline void staircase_rec(const std::vector<Expo>& leads, Expo& cur, size_t var,
                          const std::vector<uint32_t>& bounds, std::vector<Expo>& out,
                          size_t max_count) {
  size_t n = cur.size();
  if (var == n) {
    out.push_back(cur);
    if (out.size() > max_count) throw std::runtime_error("staircase larger than cap");
    return;
  }
  for (uint32_t e = 0; e < bounds[var]; ++e) {
    cur[var] = e;
    // prune: divisible already using only variables fixed so far
    bool divisible = false;
    for (const auto& l : leads) {
      bool d = true;
      for (size_t i = 0; i <= var && d; ++i)
        if (l[i] > cur[i]) d = false;
      for (size_t i = var + 1; i < n && d; ++i)
        if (l[i] > 0) d = false;
      if (d) {
        divisible = true;
        break;
      }
    }
    if (!divisible) staircase_rec(leads, cur, var + 1, bounds, out, max_count);
  }
  cur[var] = 0;
}

}  // namespace detail

// Standard monomial basis of O/I as a vector space; error when the
// staircase is infinite.
inline QuotientBasis quotient_basis(const Ideal& I, size_t max_count = 2000000) {
  size_t n = I.ring()->nvars();
  auto leads = lead_exponents(I);
  std::vector<uint32_t> bounds(n, 0);
  bool unit = I.is_unit();
  for (size_t v = 0; v < n; ++v) {
    uint32_t best = 0;
    bool found = false;
    for (const auto& l : leads) {
      bool pure = l[v] > 0;
      for (size_t i = 0; i < n && pure; ++i)
        if (i != v && l[i] > 0) pure = false;
      if (pure && (!found || l[v] < best)) {
        best = l[v];
        found = true;
      }
    }
    if (!found && !unit)
      throw std::domain_error("quotient_basis: ideal is not zero-dimensional (variable " +
                              I.ring()->var_name(v) + " unbounded)");
    bounds[v] = best;
  }
  QuotientBasis qb{I, {}};
  if (unit) return qb;  // empty basis
  Expo cur = expo_zero(n);
  detail::staircase_rec(leads, cur, 0, bounds, qb.monomials, max_count);
  std::sort(qb.monomials.begin(), qb.monomials.end(),
            [&](const Expo& a, const Expo& b) { return I.ring()->cmp(a, b) < 0; });
  return qb;
}

inline int64_t colength(const Ideal& I) {
  return static_cast<int64_t>(quotient_basis(I).monomials.size());
}

// ---------------------------------------------------------------------------
// positive weight vectors (quasi-homogeneity detection)

namespace detail {

// Fourier-Motzkin feasibility for strict systems  A x >= b; returns a
// rational solution when one exists.
inline std::optional<std::vector<Rat>> fm_solve(std::vector<std::vector<Rat>> A,
                                                std::vector<Rat> b) {
  size_t d = A.empty() ? 0 : A[0].size();
  struct Row {
    std::vector<Rat> a;
    Rat b;
  };
  std::vector<std::vector<Row>> stages;
  std::vector<Row> rows;
  for (size_t i = 0; i < A.size(); ++i) rows.push_back({A[i], b[i]});
  for (size_t v = 0; v < d; ++v) {
    stages.push_back(rows);
    std::vector<Row> pos, neg, zero;
    for (auto& r : rows) {
      int s = sgn(r.a[v]);
      if (s > 0)
        pos.push_back(r);
      else if (s < 0)
        neg.push_back(r);
      else
        zero.push_back(r);
    }
    std::vector<Row> next = zero;
    for (const auto& p : pos)
      for (const auto& q : neg) {
        // p: a_v x_v >= b_p - rest_p ; q gives upper bound. Combine.
        Row r;
        r.a.resize(d, Rat(0));
        Rat cp = p.a[v], cq = -q.a[v];
        for (size_t j = 0; j < d; ++j) r.a[j] = p.a[j] * cq + q.a[j] * cp;
        r.b = p.b * cq + q.b * cp;
        r.a[v] = Rat(0);
        next.push_back(std::move(r));
        if (next.size() > 4000) return std::nullopt;  // blowup guard
      }
    rows = std::move(next);
  }
  for (const auto& r : rows)
    if (sgn(r.b) > 0) return std::nullopt;  // 0 >= b with b > 0
  // Back-substitute.
  std::vector<Rat> x(d, Rat(0));
  for (size_t v = d; v-- > 0;) {
    Rat lo(0);
    bool has_lo = false;
    Rat hi(0);
    bool has_hi = false;
    for (const auto& r : stages[v]) {
      Rat rest = r.b;
      for (size_t j = v + 1; j < d; ++j) rest -= r.a[j] * x[j];
      int s = sgn(r.a[v]);
      if (s > 0) {
        Rat bound = rest / r.a[v];
        if (!has_lo || bound > lo) {
          lo = bound;
          has_lo = true;
        }
      } else if (s < 0) {
        Rat bound = rest / r.a[v];
        if (!has_hi || bound < hi) {
          hi = bound;
          has_hi = true;
        }
      }
    }
    if (has_lo && has_hi && lo > hi) return std::nullopt;
    if (has_lo)
      x[v] = has_hi ? Rat((lo + hi) / 2) : Rat(lo + 1);
    else if (has_hi)
      x[v] = Rat(hi - 1);
    else
      x[v] = Rat(1);
  }
  return x;
}

}  // namespace detail

// A positive integer weight vector making every generator weighted
// homogeneous, when one exists.
inline std::optional<std::vector<int64_t>> find_positive_weights(
    const std::vector<Polynomial>& gens) {
  if (gens.empty()) return std::nullopt;
  size_t n = gens[0].ring()->nvars();
  if (n == 0) return std::nullopt;
  // Difference vectors of exponents within each generator.
  std::vector<std::vector<Rat>> D;
  for (const auto& g : gens) {
    if (g.nterms() < 2) continue;
    const Expo& e0 = g.terms()[0].exp;
    for (size_t t = 1; t < g.nterms(); ++t) {
      std::vector<Rat> row(n);
      for (size_t i = 0; i < n; ++i)
        row[i] = Rat(static_cast<long>(g.terms()[t].exp[i]) - static_cast<long>(e0[i]));
      D.push_back(std::move(row));
    }
  }
  // Nullspace of D (w with D w = 0), as w = N x.
  std::vector<std::vector<Rat>> M = D;
  std::vector<int> pivot_col;
  size_t rank = 0;
  for (size_t col = 0; col < n && rank < M.size(); ++col) {
    size_t piv = SIZE_MAX;
    for (size_t r = rank; r < M.size(); ++r)
      if (sgn(M[r][col]) != 0) {
        piv = r;
        break;
      }
    if (piv == SIZE_MAX) continue;
    std::swap(M[rank], M[piv]);
    Rat p = M[rank][col];
    for (auto& c : M[rank]) c /= p;
    for (size_t r = 0; r < M.size(); ++r) {
      if (r == rank || sgn(M[r][col]) == 0) continue;
      Rat f = M[r][col];
      for (size_t c = 0; c < n; ++c) M[r][c] -= f * M[rank][c];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++rank;
  }
  std::vector<int> free_cols;
  for (size_t c = 0; c < n; ++c)
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(c)) == pivot_col.end())
      free_cols.push_back(static_cast<int>(c));
  if (free_cols.empty()) return std::nullopt;
  size_t d = free_cols.size();
  // N: n x d basis of the nullspace.
  std::vector<std::vector<Rat>> N(n, std::vector<Rat>(d, Rat(0)));
  for (size_t k = 0; k < d; ++k) {
    N[free_cols[k]][k] = Rat(1);
    for (size_t r = 0; r < rank; ++r) N[pivot_col[r]][k] = -M[r][free_cols[k]];
  }
  // Feasibility: (N x)_i >= 1 for all i.
  std::vector<Rat> ones(n, Rat(1));
  auto x = detail::fm_solve(N, ones);
  if (!x) return std::nullopt;
  std::vector<Rat> w(n, Rat(0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < d; ++k) w[i] += N[i][k] * (*x)[k];
  Int l(1);
  for (const auto& wi : w) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), wi.get_den().get_mpz_t());
  std::vector<int64_t> wi(n);
  for (size_t i = 0; i < n; ++i) {
    Rat s = w[i] * Rat(l);
    if (sgn(s) <= 0 || s.get_den() != 1) return std::nullopt;
    if (!s.get_num().fits_slong_p()) return std::nullopt;
    wi[i] = s.get_num().get_si();
  }
  return wi;
}

// ---------------------------------------------------------------------------
// local colength

struct LocalColength {
  bool finite = false;
  int64_t value = 0;
  int stabilized_at = 0;  // m-power N where stabilization occurred; 0 = graded path
};

namespace detail {

inline std::vector<Polynomial> degree_monomials(const RingPtr& ring, uint32_t deg) {
  std::vector<Polynomial> out;
  Expo cur = expo_zero(ring->nvars());
  std::function<void(size_t, uint32_t)> rec = [&](size_t v, uint32_t left) {
    if (v + 1 == ring->nvars()) {
      cur[v] = left;
      out.push_back(Polynomial::monomial(ring, cur));
      cur[v] = 0;
      return;
    }
    for (uint32_t e = 0; e <= left; ++e) {
      cur[v] = e;
      rec(v + 1, left - e);
    }
    cur[v] = 0;
  };
  rec(0, deg);
  return out;
}

}  // namespace detail

// dim_C of O_0 / I_0. Graded fast path when a positive weight vector exists;
// otherwise m^N stabilization with two consecutive equal values, N <= cap.
inline LocalColength local_colength(const Ideal& I, int cap = 24) {
  LocalColength out;
  if (I.is_unit()) {
    out.finite = true;
    out.value = 0;
    return out;
  }
  if (find_positive_weights(I.gens())) {
    // V(I) is invariant under a positive weight action: the origin is the
    // only candidate isolated point and local = global colength.
    try {
      out.value = colength(I);
      out.finite = true;
    } catch (const std::domain_error&) {
      out.finite = false;  // positive-dimensional through the origin
    }
    return out;
  }
  int64_t prev = -1;
  for (int N = 1; N <= cap; ++N) {
    std::vector<Polynomial> gens = I.gens();
    auto ms = detail::degree_monomials(I.ring(), static_cast<uint32_t>(N));
    gens.insert(gens.end(), ms.begin(), ms.end());
    Ideal J(I.ring(), std::move(gens));
    int64_t c = colength(J);
    if (c == prev) {
      out.finite = true;
      out.value = c;
      out.stabilized_at = N;
      return out;
    }
    prev = c;
  }
  out.finite = false;
  return out;
}

// ---------------------------------------------------------------------------
// rational points

struct RationalPoint {
  std::vector<Rat> coords;
  int64_t multiplicity = 0;
};

struct RationalPointSet {
  std::vector<RationalPoint> points;
  int64_t colength = 0;        // dim_C O/I over the closure
  bool complete = false;       // multiplicities account for the whole colength
  bool factor_capped = false;  // trailing/leading coefficient factorization hit the cap
};

namespace detail {

// Rational roots with multiplicities of a nonzero univariate polynomial
// given by (degree -> coefficient) over Z.
inline std::vector<std::pair<Rat, int>> rational_roots(std::map<int64_t, Int> coeffs,
                                                       bool* capped) {
  std::vector<std::pair<Rat, int>> roots;
  // strip powers of x: root 0
  int64_t minexp = coeffs.begin()->first;
  if (minexp > 0) {
    std::map<int64_t, Int> shifted;
    for (auto& [e, c] : coeffs) shifted[e - minexp] = c;
    coeffs = std::move(shifted);
    roots.push_back({Rat(0), static_cast<int>(minexp)});
  }
  if (coeffs.size() == 1) return roots;  // monomial: only the root 0
  auto divisors = [&](Int v, std::vector<Int>& out) {
    v = abs(v);
    out.push_back(1);
    Int p(2);
    int64_t guard = 0;
    while (v > 1) {
      if (++guard > 2000000) {
        *capped = true;
        break;
      }
      if (v % p == 0) {
        size_t sz = out.size();
        Int pk = p;
        while (v % p == 0) {
          v /= p;
          for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
          pk *= p;
        }
      }
      p += (p == 2) ? 1 : 2;
      if (p * p > v && v > 1) {
        size_t sz = out.size();
        for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * v);
        break;
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  };
  Int a0 = coeffs.begin()->second;
  Int an = coeffs.rbegin()->second;
  std::vector<Int> dn, dd;
  divisors(a0, dn);
  divisors(an, dd);
  auto eval = [&](const Rat& x) {
    Rat acc(0);
    int64_t deg = coeffs.rbegin()->first;
    for (int64_t e = deg; e >= 0; --e) {
      acc *= x;
      auto it = coeffs.find(e);
      if (it != coeffs.end()) acc += Rat(it->second);
    }
    return acc;
  };
  auto deflate = [&](std::map<int64_t, Int>& cs, const Rat& r) {
    // synthetic division by (x - r) over Q, then clear denominators
    int64_t deg = cs.rbegin()->first;
    std::map<int64_t, Rat> q;
    Rat carry(0);
    for (int64_t e = deg; e >= 1; --e) {
      Rat c = carry;
      auto it = cs.find(e);
      if (it != cs.end()) c += Rat(it->second);
      q[e - 1] = c;
      carry = c * r;
    }
    Int l(1);
    for (auto& [e, c] : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::map<int64_t, Int> zi;
    for (auto& [e, c] : q) {
      Int zc = c.get_num() * (l / c.get_den());
      if (zc != 0) zi[e] = zc;
    }
    cs = std::move(zi);
  };
  std::set<Rat> seen;
  std::vector<Rat> candidates;
  for (const auto& p : dn)
    for (const auto& q : dd)
      for (int s : {1, -1}) {
        Rat c(s * p, q);
        c.canonicalize();
        if (seen.insert(c).second) candidates.push_back(c);
      }
  for (const auto& c : candidates) {
    if (coeffs.size() <= 1) break;
    if (sgn(eval(c)) != 0) continue;
    int mult = 0;
    while (coeffs.size() > 1 && sgn(eval(c)) == 0) {
      deflate(coeffs, c);
      ++mult;
      if (coeffs.empty()) break;
    }
    roots.push_back({c, mult});
  }
  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return roots;
}

inline std::map<int64_t, Int> univariate_coeffs(const Polynomial& p, size_t var) {
  Int l(1);
  for (const auto& t : p.terms())
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den().get_mpz_t());
  std::map<int64_t, Int> cs;
  for (const auto& t : p.terms())
    cs[t.exp[var]] = t.coeff.get_num() * (l / t.coeff.get_den());
  return cs;
}

inline void rational_points_rec(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                std::vector<Rat>& partial, std::vector<std::vector<Rat>>& out,
                                bool* capped) {
  size_t n = ring->nvars();
  if (n == 0) {
    out.push_back(partial);  // all generators were constants checked upstream
    return;
  }
  // Lex basis: find the univariate element in the LAST variable.
  RingPtr lexring = make_ring(ring->vars(), MonomialOrder::lex());
  Ideal I(lexring, [&] {
    std::vector<Polynomial> g;
    for (const auto& p : gens) g.push_back(transport(p, lexring));
    return g;
  }());
  if (I.is_unit()) return;
  const Polynomial* uni = nullptr;
  for (const auto& b : I.groebner()) {
    bool only_last = true;
    for (size_t v = 0; v + 1 < n && only_last; ++v)
      if (b.depends_on(v)) only_last = false;
    if (only_last) {
      uni = &b;
      break;
    }
  }
  if (!uni) throw std::domain_error("rational_points: ideal is not zero-dimensional");
  auto roots = rational_roots(univariate_coeffs(*uni, n - 1), capped);
  // Substitute each root and recurse on the smaller ring.
  std::vector<std::string> subvars(ring->vars().begin(), ring->vars().end() - 1);
  for (const auto& [r, mult] : roots) {
    (void)mult;
    if (n == 1) {
      partial.push_back(r);
      std::vector<Rat> pt(partial.rbegin(), partial.rend());
      out.push_back(pt);
      partial.pop_back();
      continue;
    }
    RingPtr sub = make_ring(subvars, MonomialOrder::lex());
    std::vector<std::optional<Polynomial>> images(n);
    for (size_t v = 0; v + 1 < n; ++v) images[v] = Polynomial::variable(sub, v);
    images[n - 1] = Polynomial::constant(sub, r);
    std::vector<Polynomial> next;
    bool inconsistent = false;
    for (const auto& b : I.groebner()) {
      Polynomial q = substitute(b, images, sub);
      if (q.is_zero_poly()) continue;
      if (q.is_constant()) {
        inconsistent = true;
        break;
      }
      next.push_back(std::move(q));
    }
    if (inconsistent) continue;
    if (next.empty()) throw std::domain_error("rational_points: positive-dimensional fiber");
    partial.push_back(r);
    rational_points_rec(sub, next, partial, out, capped);
    partial.pop_back();
  }
}

}  // namespace detail

// All rational points of a zero-dimensional V(I), with multiplicities, plus
// a completeness certificate (sum of multiplicities == colength means no
// points were missed over the closure).
inline RationalPointSet rational_points(const Ideal& I) {
  RationalPointSet out;
  out.colength = colength(I);  // throws when not zero-dimensional
  if (out.colength == 0) {
    out.complete = true;
    return out;
  }
  std::vector<std::vector<Rat>> pts;
  std::vector<Rat> partial;
  bool capped = false;
  detail::rational_points_rec(I.ring(), I.gens(), partial, pts, &capped);
  out.factor_capped = capped;
  int64_t total = 0;
  for (auto& coords : pts) {
    RationalPoint p;
    p.coords = coords;
    // multiplicity: local colength at the translated origin
    std::vector<std::optional<Polynomial>> images(I.ring()->nvars());
    for (size_t v = 0; v < I.ring()->nvars(); ++v)
      images[v] = Polynomial::variable(I.ring(), v) + Polynomial::constant(I.ring(), coords[v]);
    std::vector<Polynomial> tgens;
    for (const auto& g : I.gens()) tgens.push_back(substitute(g, images, I.ring()));
    LocalColength lc = local_colength(Ideal(I.ring(), std::move(tgens)));
    if (!lc.finite) throw std::domain_error("rational_points: point not isolated");
    p.multiplicity = lc.value;
    total += p.multiplicity;
    // verify the point zeroes all generators exactly
    for (const auto& g : I.gens())
      if (sgn(evaluate(g, p.coords)) != 0)
        throw std::logic_error("rational_points: enumerated point fails a generator");
    out.points.push_back(std::move(p));
  }
  out.complete = (total == out.colength) && !capped;
  return out;
}

}  // namespace germ
