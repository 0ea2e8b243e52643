// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Exact integer/rational arithmetic. Thin layer over GMP: mpz_class /
// mpq_class already maintain the canonical form we rely on everywhere
// (denominator > 0, gcd(num, den) = 1 after canonicalize).

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace germ {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long n, long d = 1) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

inline Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

// Canonical text form: "p" or "p/q", q > 0.
inline std::string to_string(const Rat& q) { return q.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_one(const Rat& q) { return q == 1; }

inline Int pow(Int base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow(const Rat& base, unsigned long e) {
  Rat r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
  return r;
}

inline size_t hash_int(const Int& z) {
  // Cheap rolling hash over the limb data; sign folded in.
  size_t h = z < 0 ? 0x9e3779b97f4a7c15ULL : 0;
  const mpz_srcptr p = z.get_mpz_t();
  int n = std::abs(p->_mp_size);
  for (int i = 0; i < n; ++i) h = h * 1099511628211ULL + static_cast<size_t>(p->_mp_d[i]);
  return h;
}

inline size_t hash_rat(const Rat& q) {
  return hash_int(q.get_num()) * 31 + hash_int(q.get_den());
}

}  // namespace germ
