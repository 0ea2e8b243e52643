// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Buchberger engine. Reduced Groebner bases over Q with:
//   - normal selection strategy (minimal lcm degree) and Gebauer-Moeller
//     pair elimination,
//   - fraction-free geobucket reduction (integer arithmetic inside, monic
//     rational output),
//   - an optional modular prefilter (lead skeleton mod 2^61-1) that predicts
//     zero reductions; the final basis is certified over Q and recomputed
//     without the filter if certification fails, so output is bit-identical
//     with the filter off,
//   - an optional degree cap: for inputs homogeneous under a degree-
//     compatible order, pairs above the cap are dropped and the result is
//     the truncated basis (all elements of lead degree <= cap are present
//     and correct).
// The reduced basis is unique for (ideal, order); results are deterministic.

#pragma once

#include <atomic>
#include <iostream>
#include <mutex>

#include "germ/io.hpp"
#include "germ/polynomial.hpp"
#include "germ/reduce.hpp"

namespace germ {

struct GBOptions {
  bool modular_filter = false;
  int verbosity = 0;
  int64_t degree_cap = -1;  // -1: none
};

// Process-wide defaults, set by the CLI. Engine output does not depend on
// these (the filter is verified), only running time does.
inline GBOptions& gb_options() {
  static GBOptions opts;
  return opts;
}

struct GBStats {
  size_t pairs_queued = 0;
  size_t pairs_reduced = 0;
  size_t zero_reductions = 0;
  size_t filtered_pairs = 0;
  size_t capped_pairs = 0;
  size_t basis_size = 0;
};

namespace detail {

struct ZTerm {
  Expo exp;
  Int coeff;
};
using ZPoly = std::vector<ZTerm>;  // sorted descending in the ring order

struct ZTermCmp {
  const Ring* ring;
  int operator()(const ZTerm& a, const ZTerm& b) const { return ring->cmp(a.exp, b.exp); }
};

inline ZPoly to_zpoly(const Polynomial& p, Rat* scale = nullptr) {
  Int l(1);
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den().get_mpz_t());
  ZPoly z;
  z.reserve(p.nterms());
  Int g(0);
  for (const auto& t : p.terms()) {
    Int c = t.coeff.get_num() * (l / t.coeff.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    z.push_back({t.exp, std::move(c)});
  }
  if (!z.empty() && g > 1)
    for (auto& t : z) t.coeff /= g;
  if (scale) {
    *scale = z.empty() ? Rat(1) : Rat(g, l);
    scale->canonicalize();
  }
  return z;
}

inline Polynomial from_zpoly(const RingPtr& ring, const ZPoly& z, const Rat& scale) {
  std::vector<Term> ts;
  ts.reserve(z.size());
  for (const auto& t : z) {
    Rat c = scale * Rat(t.coeff);
    ts.push_back({t.exp, std::move(c)});
  }
  return Polynomial(ring, std::move(ts));
}

inline void strip_content(ZPoly& z) {
  if (z.empty()) return;
  Int g(0);
  for (const auto& t : z) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  if (g > 1)
    for (auto& t : z) t.coeff /= g;
  if (sgn(z.front().coeff) < 0)
    for (auto& t : z) t.coeff = -t.coeff;
}

inline bool zpoly_eq(const ZPoly& a, const ZPoly& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].exp != b[i].exp || a[i].coeff != b[i].coeff) return false;
  return true;
}

inline uint64_t support_mask(const Expo& e) {
  uint64_t m = 0;
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i]) m |= 1ULL << (i & 63);
  return m;
}

// ---- modular skeleton (F_p with p = 2^61 - 1) --------------------------

constexpr uint64_t kFilterPrime = (1ULL << 61) - 1;

inline uint64_t mod_mul(uint64_t a, uint64_t b) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % kFilterPrime);
}
inline uint64_t mod_add(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  return s >= kFilterPrime ? s - kFilterPrime : s;
}
inline uint64_t mod_pow(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mod_mul(r, a);
    a = mod_mul(a, a);
    e >>= 1;
  }
  return r;
}
inline uint64_t mod_inv(uint64_t a) { return mod_pow(a, kFilterPrime - 2); }

struct PTerm {
  Expo exp;
  uint64_t coeff;
};
using PPoly = std::vector<PTerm>;

struct PTermCmp {
  const Ring* ring;
  int operator()(const PTerm& a, const PTerm& b) const { return ring->cmp(a.exp, b.exp); }
};

inline uint64_t mod_of(const Int& v) {
  static const Int p = (Int(1) << 61) - 1;
  Int r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return r.get_ui();
}

inline bool zpoly_mod(const ZPoly& z, PPoly& out) {
  out.clear();
  out.reserve(z.size());
  for (const auto& t : z) {
    uint64_t c = mod_of(t.coeff);
    if (c) out.push_back({t.exp, c});
  }
  return z.empty() || (!out.empty() && out.front().exp == z.front().exp);
}

}  // namespace detail

struct GroebnerResult {
  std::vector<Polynomial> basis;  // monic, sorted ascending by lead term
  GBStats stats;
  bool truncated = false;
};

namespace detail {

class Buchberger {
 public:
  Buchberger(RingPtr ring, const std::vector<Polynomial>& gens, GBOptions opts)
      : ring_(std::move(ring)), R_(*ring_), opts_(opts) {
    for (const auto& g : gens) {
      if (g.is_zero_poly()) continue;
      ZPoly z = to_zpoly(g);
      strip_content(z);
      input_.push_back(std::move(z));
    }
  }

  GroebnerResult run() {
    if (opts_.modular_filter) {
      filter_ok_ = true;
      GroebnerResult r = run_once();
      if (filter_ok_ && certify(r.basis)) return r;
      if (opts_.verbosity > 0)
        std::cerr << "[gb] modular filter certification failed; recomputing exactly\n";
      reset();
      opts_.modular_filter = false;
    }
    return run_once();
  }

  // Buchberger certificate: every Gebauer-Moeller-surviving S-pair (within
  // the degree cap, when set) reduces to zero and every original generator
  // reduces to zero.
  bool certify(const std::vector<Polynomial>& basis) {
    std::vector<ZPoly> zb;
    zb.reserve(basis.size());
    for (const auto& b : basis) {
      ZPoly z = to_zpoly(b);
      strip_content(z);
      zb.push_back(std::move(z));
    }
    for (const auto& g : input_) {
      if (opts_.degree_cap >= 0 && !g.empty() && R_.strategy_degree(g.front().exp) > opts_.degree_cap)
        continue;
      if (!reduces_to_zero(g, zb)) return false;
    }
    for (size_t i = 0; i < zb.size(); ++i)
      for (size_t j = i + 1; j < zb.size(); ++j) {
        if (expo_coprime(zb[i].front().exp, zb[j].front().exp)) continue;
        Expo l = expo_lcm(zb[i].front().exp, zb[j].front().exp);
        if (opts_.degree_cap >= 0 && R_.strategy_degree(l) > opts_.degree_cap) continue;
        bool chained = false;
        for (size_t k = 0; k < zb.size() && !chained; ++k) {
          if (k == i || k == j) continue;
          if (expo_divides(zb[k].front().exp, l) &&
              expo_lcm(zb[i].front().exp, zb[k].front().exp) != l &&
              expo_lcm(zb[j].front().exp, zb[k].front().exp) != l)
            chained = true;
        }
        if (chained) continue;
        ZPoly sp = s_poly(zb[i], zb[j]);
        if (!reduces_to_zero(sp, zb)) return false;
      }
    return true;
  }

 private:
  struct Elem {
    ZPoly poly;
    PPoly ppoly;
    bool pmirror_ok = false;
    uint64_t mask = 0;
    bool redundant = false;
  };

  struct Pair {
    size_t i, j;
    Expo lcm;
    int64_t deg;
  };

  void reset() {
    basis_.clear();
    pairs_.clear();
    stats_ = GBStats{};
  }

  ZPoly s_poly(const ZPoly& f, const ZPoly& g) const {
    Expo l = expo_lcm(f.front().exp, g.front().exp);
    Int a = f.front().coeff, b = g.front().coeff, d;
    mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= d;
    b /= d;
    Geobucket<ZTerm, ZTermCmp> acc(ZTermCmp{&R_});
    acc.add(shifted(f, expo_div(l, f.front().exp)), b);
    acc.add(shifted(g, expo_div(l, g.front().exp)), -a);
    ZPoly out;
    while (auto t = acc.pop_max()) out.push_back(std::move(*t));
    strip_content(out);
    return out;
  }

  static ZPoly shifted(const ZPoly& f, const Expo& sh) {
    ZPoly out;
    out.reserve(f.size());
    for (const auto& t : f) out.push_back({expo_mul(t.exp, sh), t.coeff});
    return out;
  }

  const Elem* find_reducer(const Expo& e, uint64_t mask) const {
    for (const auto& el : basis_) {
      if (el.redundant) continue;
      if ((el.mask & ~mask) != 0) continue;
      if (expo_divides(el.poly.front().exp, e)) return &el;
    }
    return nullptr;
  }

  // Full reduction (head and tail). out is correct up to a positive scalar.
  ZPoly reduce_full(ZPoly r) {
    Geobucket<ZTerm, ZTermCmp> acc(ZTermCmp{&R_});
    acc.add(std::move(r), 1);
    // deferred-scale output: out[i] true value = coeff * prod of a-steps
    // applied after generation gen[i]
    ZPoly out;
    std::vector<uint32_t> gen;
    std::vector<Int> amults;
    Int carry(1);  // compensates accumulator content strips
    size_t steps = 0;
    while (auto top = acc.pop_max()) {
      uint64_t m = support_mask(top->exp);
      const Elem* red = find_reducer(top->exp, m);
      if (!red) {
        ZTerm t = std::move(*top);
        if (carry != 1) t.coeff *= carry;
        out.push_back(std::move(t));
        gen.push_back(static_cast<uint32_t>(amults.size()));
        continue;
      }
      const ZPoly& g = red->poly;
      Int a = g.front().coeff, b = top->coeff, d;
      mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      a /= d;
      b /= d;
      // acc <- a * acc_without_top - b * shift * tail(g)
      if (a != 1) {
        acc.rescale(a);
        amults.push_back(a);
      }
      if (g.size() > 1) {
        Expo sh = expo_div(top->exp, g.front().exp);
        ZPoly tail;
        tail.reserve(g.size() - 1);
        for (size_t k = 1; k < g.size(); ++k) tail.push_back({expo_mul(g[k].exp, sh), g[k].coeff});
        acc.add(std::move(tail), -b);
      }
      if (++steps % 16 == 0 && acc.scale_bits() > 2048) {
        Int c = acc.content();
        if (c > 1) {
          acc.divide(c);
          carry *= c;
        }
      }
    }
    // apply deferred multipliers: term i gets prod of amults[gen[i]..]
    if (!amults.empty()) {
      std::vector<Int> suffix(amults.size() + 1, Int(1));
      for (size_t k = amults.size(); k-- > 0;) suffix[k] = suffix[k + 1] * amults[k];
      for (size_t i = 0; i < out.size(); ++i) out[i].coeff *= suffix[gen[i]];
    }
    strip_content(out);
    return out;
  }

  // Zero test against an arbitrary snapshot (no output tracking).
  bool reduces_to_zero(const ZPoly& input, const std::vector<ZPoly>& basis) const {
    std::vector<uint64_t> masks;
    masks.reserve(basis.size());
    for (const auto& b : basis) masks.push_back(support_mask(b.front().exp));
    Geobucket<ZTerm, ZTermCmp> acc(ZTermCmp{&R_});
    acc.add(input, 1);
    size_t steps = 0;
    while (auto top = acc.pop_max()) {
      uint64_t m = support_mask(top->exp);
      const ZPoly* g = nullptr;
      for (size_t k = 0; k < basis.size(); ++k) {
        if ((masks[k] & ~m) != 0) continue;
        if (expo_divides(basis[k].front().exp, top->exp)) {
          g = &basis[k];
          break;
        }
      }
      if (!g) return false;
      Int a = g->front().coeff, b = top->coeff, d;
      mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      a /= d;
      b /= d;
      if (a != 1) acc.rescale(a);
      if (g->size() > 1) {
        Expo sh = expo_div(top->exp, g->front().exp);
        ZPoly tail;
        tail.reserve(g->size() - 1);
        for (size_t k = 1; k < g->size(); ++k) tail.push_back({expo_mul((*g)[k].exp, sh), (*g)[k].coeff});
        acc.add(std::move(tail), -b);
      }
      if (++steps % 16 == 0 && acc.scale_bits() > 2048) {
        Int c = acc.content();
        if (c > 1) acc.divide(c);
      }
    }
    return true;
  }

  bool filter_predicts_zero(const ZPoly& spoly) {
    if (!filter_ok_) return false;
    PPoly start;
    if (!zpoly_mod(spoly, start)) return false;
    Geobucket<PTerm, PTermCmp> acc(PTermCmp{&R_});
    // mod-p coefficients live in Int-free uint64 world: reuse the bucket by
    // packing coefficients into Int is wasteful; do a simple cursor merge.
    // Segments stay small because mod-p tails do not swell coefficients.
    (void)acc;
    PPoly r = std::move(start);
    size_t cur = 0;
    while (cur < r.size()) {
      uint64_t m = support_mask(r[cur].exp);
      const Elem* red = nullptr;
      for (const auto& e : basis_) {
        if (e.redundant || !e.pmirror_ok) continue;
        if ((e.mask & ~m) != 0) continue;
        if (expo_divides(e.poly.front().exp, r[cur].exp)) {
          red = &e;
          break;
        }
      }
      if (!red) return false;
      uint64_t binv = mod_mul(r[cur].coeff, mod_inv(red->ppoly.front().coeff));
      // r <- r - binv * shift * g
      Expo sh = expo_div(r[cur].exp, red->ppoly.front().exp);
      PPoly next;
      next.reserve(r.size() - cur + red->ppoly.size());
      size_t i = cur, j = 0;
      const PPoly& g = red->ppoly;
      while (i < r.size() || j < g.size()) {
        int which;
        Expo ge;
        if (i >= r.size())
          which = 1;
        else if (j >= g.size())
          which = -1;
        else {
          ge = expo_mul(g[j].exp, sh);
          which = -R_.cmp(r[i].exp, ge);
        }
        if (which < 0) {
          next.push_back(r[i++]);
        } else if (which > 0) {
          next.push_back({expo_mul(g[j].exp, sh), mod_mul(g[j].coeff, kFilterPrime - binv)});
          ++j;
        } else {
          uint64_t c = mod_add(r[i].coeff, mod_mul(g[j].coeff, kFilterPrime - binv));
          if (c) next.push_back({r[i].exp, c});
          ++i;
          ++j;
        }
      }
      r = std::move(next);
      cur = 0;
    }
    return true;
  }

  void add_element(ZPoly z) {
    Elem e;
    strip_content(z);
    e.mask = support_mask(z.front().exp);
    if (opts_.modular_filter) {
      e.pmirror_ok = zpoly_mod(z, e.ppoly);
      if (!e.pmirror_ok) filter_ok_ = false;
    }
    e.poly = std::move(z);
    size_t t = basis_.size();
    const Expo& lt = e.poly.front().exp;
    for (auto& p : pairs_) {
      if (p.i == SIZE_MAX) continue;
      if (expo_divides(lt, p.lcm) && expo_lcm(lt, basis_[p.i].poly.front().exp) != p.lcm &&
          expo_lcm(lt, basis_[p.j].poly.front().exp) != p.lcm)
        p.i = SIZE_MAX;
    }
    struct Cand {
      size_t i;
      Expo lcm;
      bool coprime;
      bool keep = true;
    };
    std::vector<Cand> cands;
    for (size_t i = 0; i < t; ++i) {
      Expo l = expo_lcm(basis_[i].poly.front().exp, lt);
      cands.push_back({i, std::move(l), expo_coprime(basis_[i].poly.front().exp, lt)});
    }
    for (auto& c : cands) {
      if (!c.keep) continue;
      for (auto& c2 : cands) {
        if (&c2 == &c || !c2.keep) continue;
        if (c2.lcm == c.lcm) {
          if (c2.coprime && !c.coprime) {
            c.keep = false;
            break;
          }
          if (!(c.coprime && !c2.coprime) && c2.i < c.i) {
            c.keep = false;
            break;
          }
        } else if (expo_divides(c2.lcm, c.lcm)) {
          c.keep = false;
          break;
        }
      }
    }
    for (auto& c : cands) {
      if (!c.keep || c.coprime) continue;
      int64_t deg = R_.strategy_degree(c.lcm);
      if (opts_.degree_cap >= 0 && deg > opts_.degree_cap) {
        ++stats_.capped_pairs;
        continue;
      }
      pairs_.push_back({c.i, t, std::move(c.lcm), deg});
      ++stats_.pairs_queued;
    }
    for (size_t i = 0; i < t; ++i)
      if (!basis_[i].redundant && expo_divides(lt, basis_[i].poly.front().exp))
        basis_[i].redundant = true;
    basis_.push_back(std::move(e));
  }

  GroebnerResult run_once() {
    for (const auto& g : input_) {
      if (opts_.degree_cap >= 0 && R_.strategy_degree(g.front().exp) > opts_.degree_cap) {
        ++stats_.capped_pairs;
        continue;
      }
      ZPoly r = reduce_full(g);
      if (!r.empty()) add_element(std::move(r));
    }
    while (true) {
      size_t best = SIZE_MAX;
      for (size_t k = 0; k < pairs_.size(); ++k) {
        const Pair& p = pairs_[k];
        if (p.i == SIZE_MAX) continue;
        if (best == SIZE_MAX) {
          best = k;
          continue;
        }
        const Pair& q = pairs_[best];
        int c;
        if (p.deg != q.deg)
          c = p.deg < q.deg ? -1 : 1;
        else if ((c = R_.cmp(p.lcm, q.lcm)) == 0)
          c = (p.i != q.i) ? (p.i < q.i ? -1 : 1) : (p.j < q.j ? -1 : (p.j > q.j ? 1 : 0));
        if (c < 0) best = k;
      }
      if (best == SIZE_MAX) break;
      Pair p = pairs_[best];
      pairs_[best].i = SIZE_MAX;
      ZPoly sp = s_poly(basis_[p.i].poly, basis_[p.j].poly);
      if (sp.empty()) continue;
      if (opts_.modular_filter && filter_predicts_zero(sp)) {
        ++stats_.filtered_pairs;
        continue;
      }
      ++stats_.pairs_reduced;
      ZPoly r = reduce_full(std::move(sp));
      if (opts_.verbosity > 1 && stats_.pairs_reduced % 25 == 0)
        std::cerr << "[gb] processed " << stats_.pairs_reduced << " deg " << p.deg << " basis "
                  << basis_.size() << " r " << r.size() << "\n";
      if (r.empty()) {
        ++stats_.zero_reductions;
        continue;
      }
      add_element(std::move(r));
    }
    return finalize();
  }

  GroebnerResult finalize() {
    std::vector<size_t> keep;
    for (size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].redundant) continue;
      bool minimal = true;
      for (size_t j = 0; j < basis_.size() && minimal; ++j) {
        if (i == j || basis_[j].redundant) continue;
        const Expo& li = basis_[i].poly.front().exp;
        const Expo& lj = basis_[j].poly.front().exp;
        if (expo_divides(lj, li) && li != lj) minimal = false;
        if (li == lj && j < i) minimal = false;
      }
      if (minimal) keep.push_back(i);
    }
    std::sort(keep.begin(), keep.end(), [&](size_t a, size_t b) {
      return R_.cmp(basis_[a].poly.front().exp, basis_[b].poly.front().exp) < 0;
    });
    std::vector<ZPoly> minimal;
    minimal.reserve(keep.size());
    for (size_t k : keep) minimal.push_back(basis_[k].poly);
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<ZPoly> others;
        others.reserve(minimal.size() - 1);
        for (size_t j = 0; j < minimal.size(); ++j)
          if (j != i) others.push_back(minimal[j]);
        ZPoly r = reduce_snapshot(minimal[i], others);
        if (!zpoly_eq(r, minimal[i])) {
          minimal[i] = std::move(r);
          changed = true;
        }
      }
    }
    GroebnerResult res;
    for (auto& z : minimal) {
      Polynomial p = from_zpoly(ring_, z, Rat(1));
      res.basis.push_back(monic(p));
    }
    std::sort(res.basis.begin(), res.basis.end(), [&](const Polynomial& a, const Polynomial& b) {
      return R_.cmp(a.lead_exp(), b.lead_exp()) < 0;
    });
    res.stats = stats_;
    res.stats.basis_size = res.basis.size();
    res.truncated = opts_.degree_cap >= 0;
    if (opts_.verbosity > 0)
      std::cerr << "[gb] done: basis " << res.basis.size() << ", pairs queued "
                << res.stats.pairs_queued << ", reduced " << res.stats.pairs_reduced
                << ", filtered " << res.stats.filtered_pairs << ", zero "
                << res.stats.zero_reductions << ", capped " << res.stats.capped_pairs << "\n";
    return res;
  }

  // Full reduction against a snapshot with the deferred-scale scheme.
  ZPoly reduce_snapshot(const ZPoly& input, const std::vector<ZPoly>& basis) const {
    std::vector<uint64_t> masks;
    masks.reserve(basis.size());
    for (const auto& b : basis) masks.push_back(support_mask(b.front().exp));
    Geobucket<ZTerm, ZTermCmp> acc(ZTermCmp{&R_});
    acc.add(input, 1);
    ZPoly out;
    std::vector<uint32_t> gen;
    std::vector<Int> amults;
    Int carry(1);
    size_t steps = 0;
    while (auto top = acc.pop_max()) {
      uint64_t m = support_mask(top->exp);
      const ZPoly* g = nullptr;
      for (size_t k = 0; k < basis.size(); ++k) {
        if ((masks[k] & ~m) != 0) continue;
        if (expo_divides(basis[k].front().exp, top->exp)) {
          g = &basis[k];
          break;
        }
      }
      if (!g) {
        ZTerm t = std::move(*top);
        if (carry != 1) t.coeff *= carry;
        out.push_back(std::move(t));
        gen.push_back(static_cast<uint32_t>(amults.size()));
        continue;
      }
      Int a = g->front().coeff, b = top->coeff, d;
      mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      a /= d;
      b /= d;
      if (a != 1) {
        acc.rescale(a);
        amults.push_back(a);
      }
      if (g->size() > 1) {
        Expo sh = expo_div(top->exp, g->front().exp);
        ZPoly tail;
        tail.reserve(g->size() - 1);
        for (size_t k = 1; k < g->size(); ++k) tail.push_back({expo_mul((*g)[k].exp, sh), (*g)[k].coeff});
        acc.add(std::move(tail), -b);
      }
      if (++steps % 16 == 0 && acc.scale_bits() > 2048) {
        Int c = acc.content();
        if (c > 1) {
          acc.divide(c);
          carry *= c;
        }
      }
    }
    if (!amults.empty()) {
      std::vector<Int> suffix(amults.size() + 1, Int(1));
      for (size_t k = amults.size(); k-- > 0;) suffix[k] = suffix[k + 1] * amults[k];
      for (size_t i = 0; i < out.size(); ++i) out[i].coeff *= suffix[gen[i]];
    }
    strip_content(out);
    return out;
  }

  RingPtr ring_;
  const Ring& R_;
  GBOptions opts_;
  std::vector<ZPoly> input_;
  std::vector<Elem> basis_;
  std::vector<Pair> pairs_;
  GBStats stats_;
  bool filter_ok_ = false;
};

}  // namespace detail

inline GroebnerResult groebner_basis_full(const RingPtr& ring,
                                          const std::vector<Polynomial>& gens,
                                          GBOptions opts) {
  detail::Buchberger engine(ring, gens, opts);
  return engine.run();
}

// Truncated basis of a homogeneous ideal under a degree-compatible order:
// every basis element of lead degree <= cap, exactly.
inline GroebnerResult groebner_truncated(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                         int64_t cap, GBOptions opts = gb_options()) {
  opts.degree_cap = cap;
  detail::Buchberger engine(ring, gens, opts);
  return engine.run();
}

// Ideal with a lazily cached reduced Groebner basis. Value type; copies
// share the cache. Thread-safe: the cache is computed under a mutex.
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial> gens) : data_(std::make_shared<Data>()) {
    data_->ring = std::move(ring);
    for (auto& g : gens) {
      if (!g.ring() || !(g.ring() == data_->ring || *g.ring() == *data_->ring))
        throw std::invalid_argument("ring mismatch in ideal generators");
      if (!g.is_zero_poly()) data_->gens.push_back(std::move(g));
    }
  }

  static Ideal zero(const RingPtr& ring) { return Ideal(ring, {}); }
  static Ideal unit(const RingPtr& ring) {
    return Ideal(ring, {Polynomial::constant(ring, Rat(1))});
  }

  const RingPtr& ring() const { return data_->ring; }
  const std::vector<Polynomial>& gens() const { return data_->gens; }

  const std::vector<Polynomial>& groebner() const {
    std::call_once(data_->once, [this] {
      GBOptions opts = gb_options();
      opts.degree_cap = -1;
      data_->gb = groebner_basis_full(data_->ring, data_->gens, opts).basis;
      data_->ready.store(true, std::memory_order_release);
    });
    return data_->gb;
  }

  bool has_cached_basis() const { return data_ && data_->ready.load(std::memory_order_acquire); }

  bool is_unit() const {
    const auto& g = groebner();
    return g.size() == 1 && g[0].is_unit_constant();
  }
  bool is_zero_ideal() const { return groebner().empty(); }

 private:
  struct Data {
    RingPtr ring;
    std::vector<Polynomial> gens;
    std::vector<Polynomial> gb;
    std::once_flag once;
    std::atomic<bool> ready{false};
  };
  std::shared_ptr<Data> data_;
};

// Remainder of p under full reduction by a monic reduced basis; zero iff
// p is a member.
inline Polynomial normal_form_against(const RingPtr& ring, const Polynomial& p,
                                      const std::vector<Polynomial>& basis) {
  if (basis.empty() || p.is_zero_poly()) return p;
  const Ring& R = *ring;
  std::vector<detail::ZPoly> zb;
  std::vector<uint64_t> masks;
  zb.reserve(basis.size());
  for (const auto& b : basis) {
    zb.push_back(detail::to_zpoly(b));
    detail::strip_content(zb.back());
    masks.push_back(detail::support_mask(zb.back().front().exp));
  }
  Rat scale;
  detail::ZPoly z = detail::to_zpoly(p, &scale);
  detail::Geobucket<detail::ZTerm, detail::ZTermCmp> acc(detail::ZTermCmp{&R});
  acc.add(std::move(z), 1);
  detail::ZPoly out;
  std::vector<uint32_t> gen;
  std::vector<Int> amults;
  while (auto top = acc.pop_max()) {
    uint64_t m = detail::support_mask(top->exp);
    const detail::ZPoly* g = nullptr;
    for (size_t k = 0; k < zb.size(); ++k) {
      if ((masks[k] & ~m) != 0) continue;
      if (expo_divides(zb[k].front().exp, top->exp)) {
        g = &zb[k];
        break;
      }
    }
    if (!g) {
      out.push_back(std::move(*top));
      gen.push_back(static_cast<uint32_t>(amults.size()));
      continue;
    }
    Int a = g->front().coeff, b = top->coeff, d;
    mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= d;
    b /= d;
    if (a != 1) {
      acc.rescale(a);
      amults.push_back(a);
    }
    if (g->size() > 1) {
      Expo sh = expo_div(top->exp, g->front().exp);
      detail::ZPoly tail;
      tail.reserve(g->size() - 1);
      for (size_t k = 1; k < g->size(); ++k)
        tail.push_back({expo_mul((*g)[k].exp, sh), (*g)[k].coeff});
      acc.add(std::move(tail), -b);
    }
  }
  // exact rational result: p = scale * (sum out_i * suffix_i) / prod(amults)
  Rat mult(1);
  std::vector<Int> suffix(amults.size() + 1, Int(1));
  for (size_t k = amults.size(); k-- > 0;) suffix[k] = suffix[k + 1] * amults[k];
  if (!amults.empty()) mult = Rat(suffix[0]);
  std::vector<Term> ts;
  ts.reserve(out.size());
  for (size_t i = 0; i < out.size(); ++i) {
    Rat c = scale * Rat(out[i].coeff * suffix[gen[i]]) / mult;
    ts.push_back({out[i].exp, std::move(c)});
  }
  return Polynomial(ring, std::move(ts));
}

inline Polynomial normal_form(const Polynomial& p, const Ideal& I) {
  return normal_form_against(I.ring(), p, I.groebner());
}

inline bool contains(const Ideal& I, const Polynomial& p) {
  return normal_form(p, I).is_zero_poly();
}

inline bool ideal_equal(const Ideal& A, const Ideal& B) {
  for (const auto& g : A.gens())
    if (!contains(B, g)) return false;
  for (const auto& g : B.gens())
    if (!contains(A, g)) return false;
  return true;
}

inline bool buchberger_certificate(const Ideal& I) {
  const auto& basis = I.groebner();
  detail::Buchberger engine(I.ring(), I.gens(), GBOptions{});
  return engine.certify(basis);
}

}  // namespace germ
