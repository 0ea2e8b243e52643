// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Groebner bases for submodules of free modules O^r. Module monomials are
// (exponent, position) pairs; the order is term-over-position (ring order on
// the monomial first, smaller position wins ties), optionally preceded by a
// position-block comparison used for elimination-style harvests. Two derived
// services power most of the higher layers: syzygy modules and lifting
// (division) of elements through a generating set. An optional degree cap
// (with per-position shifts) computes truncated bases of graded submodules.

#pragma once

#include "germ/matrix.hpp"

namespace germ {

// Element of a free module: dense vector of polynomials.
using VecPoly = std::vector<Polynomial>;

inline bool vec_is_zero(const VecPoly& v) {
  for (const auto& p : v)
    if (!p.is_zero_poly()) return false;
  return true;
}

struct ModuleOrder {
  // pos_block[p]: block id of position p; lower block ids compare greater.
  // Empty means a single block. Within a block: ring order, then smaller
  // position index wins.
  std::vector<int> pos_block;
  // degree shifts per position (graded modules); used only for the degree
  // cap and the selection strategy.
  std::vector<int64_t> pos_shift;

  int block_of(uint32_t pos) const { return pos_block.empty() ? 0 : pos_block[pos]; }
  int64_t shift_of(uint32_t pos) const { return pos_shift.empty() ? 0 : pos_shift[pos]; }
};

namespace detail {

struct MZTerm {
  Expo exp;
  uint32_t pos;
  Int coeff;
};
using MZPoly = std::vector<MZTerm>;  // sorted descending

class ModuleEngine;

struct MZTermCmp {
  const ModuleEngine* eng;
  inline int operator()(const MZTerm& a, const MZTerm& b) const;
};

class ModuleEngine {
 public:
  ModuleEngine(RingPtr ring, size_t rank, ModuleOrder order, int64_t degree_cap = -1)
      : ring_(std::move(ring)), R_(*ring_), rank_(rank), order_(std::move(order)),
        cap_(degree_cap) {}

  int cmp(const Expo& ae, uint32_t ap, const Expo& be, uint32_t bp) const {
    int ba = order_.block_of(ap), bb = order_.block_of(bp);
    if (ba != bb) return ba < bb ? 1 : -1;
    int c = R_.cmp(ae, be);
    if (c != 0) return c;
    if (ap != bp) return ap < bp ? 1 : -1;
    return 0;
  }

  int64_t term_degree(const Expo& e, uint32_t pos) const {
    return R_.strategy_degree(e) + order_.shift_of(pos);
  }

  MZPoly to_mz(const VecPoly& v) const {
    MZPoly z;
    Int l(1);
    for (const auto& p : v)
      for (const auto& t : p.terms())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den().get_mpz_t());
    for (uint32_t pos = 0; pos < v.size(); ++pos)
      for (const auto& t : v[pos].terms())
        z.push_back({t.exp, pos, t.coeff.get_num() * (l / t.coeff.get_den())});
    std::sort(z.begin(), z.end(), [&](const MZTerm& a, const MZTerm& b) {
      return cmp(a.exp, a.pos, b.exp, b.pos) > 0;
    });
    strip(z);
    return z;
  }

  VecPoly from_mz(const MZPoly& z, const Rat& scale) const {
    std::vector<std::vector<Term>> parts(rank_);
    for (const auto& t : z) parts[t.pos].push_back({t.exp, scale * Rat(t.coeff)});
    VecPoly v;
    v.reserve(rank_);
    for (auto& ts : parts) v.push_back(Polynomial(ring_, std::move(ts)));
    return v;
  }

  static void strip(MZPoly& z) {
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

  void add_input(const VecPoly& v) {
    MZPoly z = to_mz(v);
    if (!z.empty()) input_.push_back(std::move(z));
  }

  void run() {
    for (const auto& g : input_) {
      if (cap_ >= 0 && term_degree(g.front().exp, g.front().pos) > cap_) continue;
      MZPoly r = reduce_full(g);
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
      MZPoly sp = s_pair(basis_[p.i].poly, basis_[p.j].poly);
      if (sp.empty()) continue;
      MZPoly r = reduce_full(std::move(sp));
      if (!r.empty()) add_element(std::move(r));
    }
    finalize();
  }

  const std::vector<MZPoly>& reduced() const { return reduced_; }

  std::vector<VecPoly> reduced_vectors() const {
    std::vector<VecPoly> out;
    out.reserve(reduced_.size());
    for (const auto& z : reduced_) {
      Rat lc(z.front().coeff);
      out.push_back(from_mz(z, Rat(1) / lc));
    }
    return out;
  }

  // Full reduction of v against the reduced basis; exact over Q. When lift
  // is non-null it receives, per reduced-basis element, the coefficient
  // applied: v == sum_k lift[k] * reduced[k] + remainder.
  VecPoly normal_form(const VecPoly& v, std::vector<Polynomial>* lift = nullptr) const {
    if (lift) lift->assign(reduced_.size(), Polynomial::zero(ring_));
    Rat scale;
    MZPoly z = to_mz_scaled(v, &scale);
    Geobucket<MZTerm, MZTermCmp> acc(MZTermCmp{this});
    acc.add(std::move(z), 1);
    MZPoly out;
    std::vector<uint32_t> ogen;
    struct LiftEntry {
      size_t k;
      Expo shift;
      Int b;
      uint32_t gen;
    };
    std::vector<LiftEntry> lifts;
    std::vector<Int> amults;
    while (auto top = acc.pop_max()) {
      const MZPoly* g = nullptr;
      size_t gi = 0;
      for (size_t k = 0; k < reduced_.size(); ++k) {
        const MZTerm& lt = reduced_[k].front();
        if (lt.pos == top->pos && expo_divides(lt.exp, top->exp)) {
          g = &reduced_[k];
          gi = k;
          break;
        }
      }
      if (!g) {
        out.push_back(std::move(*top));
        ogen.push_back(static_cast<uint32_t>(amults.size()));
        continue;
      }
      Int a = g->front().coeff, b = top->coeff, d;
      mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      a /= d;
      b /= d;
      Expo shift = expo_div(top->exp, g->front().exp);
      if (a != 1) {
        acc.rescale(a);
        amults.push_back(a);
      }
      if (lift) lifts.push_back({gi, shift, b, static_cast<uint32_t>(amults.size())});
      if (g->size() > 1) {
        MZPoly tail;
        tail.reserve(g->size() - 1);
        for (size_t k = 1; k < g->size(); ++k)
          tail.push_back({expo_mul((*g)[k].exp, shift), (*g)[k].pos, (*g)[k].coeff});
        acc.add(std::move(tail), -b);
      }
    }
    std::vector<Int> suffix(amults.size() + 1, Int(1));
    for (size_t k = amults.size(); k-- > 0;) suffix[k] = suffix[k + 1] * amults[k];
    Rat mult = Rat(suffix[0]);
    Rat s = scale / mult;
    std::vector<std::vector<Term>> parts(rank_);
    for (size_t i = 0; i < out.size(); ++i)
      parts[out[i].pos].push_back({out[i].exp, s * Rat(out[i].coeff * suffix[ogen[i]])});
    VecPoly result;
    result.reserve(rank_);
    for (auto& ts : parts) result.push_back(Polynomial(ring_, std::move(ts)));
    if (lift) {
      std::vector<std::vector<Term>> lparts(reduced_.size());
      for (const auto& e : lifts)
        lparts[e.k].push_back({e.shift, s * Rat(e.b * suffix[e.gen])});
      for (size_t k = 0; k < reduced_.size(); ++k)
        (*lift)[k] = Polynomial(ring_, std::move(lparts[k]));
    }
    return result;
  }

  size_t rank() const { return rank_; }
  const RingPtr& ring() const { return ring_; }

 private:
  friend struct MZTermCmp;

  struct Elem {
    MZPoly poly;
    bool redundant = false;
  };
  struct Pair {
    size_t i, j;
    Expo lcm;
    int64_t deg;
  };

  MZPoly to_mz_scaled(const VecPoly& v, Rat* scale) const {
    MZPoly z = to_mz(v);
    *scale = Rat(1);
    for (uint32_t pos = 0; pos < v.size() && !z.empty(); ++pos) {
      if (v[pos].is_zero_poly()) continue;
      for (const auto& t : z)
        if (t.pos == pos && t.exp == v[pos].terms().front().exp) {
          *scale = v[pos].terms().front().coeff / Rat(t.coeff);
          return z;
        }
    }
    return z;
  }

  MZPoly s_pair(const MZPoly& f, const MZPoly& g) const {
    Expo l = expo_lcm(f.front().exp, g.front().exp);
    Int a = f.front().coeff, b = g.front().coeff, d;
    mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= d;
    b /= d;
    Geobucket<MZTerm, MZTermCmp> acc(MZTermCmp{this});
    acc.add(shifted(f, expo_div(l, f.front().exp)), b);
    acc.add(shifted(g, expo_div(l, g.front().exp)), -a);
    MZPoly out;
    while (auto t = acc.pop_max()) out.push_back(std::move(*t));
    strip(out);
    return out;
  }

  static MZPoly shifted(const MZPoly& f, const Expo& sh) {
    MZPoly out;
    out.reserve(f.size());
    for (const auto& t : f) out.push_back({expo_mul(t.exp, sh), t.pos, t.coeff});
    return out;
  }

  MZPoly reduce_full(MZPoly r) {
    Geobucket<MZTerm, MZTermCmp> acc(MZTermCmp{this});
    acc.add(std::move(r), 1);
    MZPoly out;
    std::vector<uint32_t> gen;
    std::vector<Int> amults;
    Int carry(1);
    size_t steps = 0;
    while (auto top = acc.pop_max()) {
      const MZPoly* g = nullptr;
      for (const auto& e : basis_) {
        if (e.redundant) continue;
        const MZTerm& lt = e.poly.front();
        if (lt.pos == top->pos && expo_divides(lt.exp, top->exp)) {
          g = &e.poly;
          break;
        }
      }
      if (!g) {
        MZTerm t = std::move(*top);
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
        MZPoly tail;
        tail.reserve(g->size() - 1);
        for (size_t k = 1; k < g->size(); ++k)
          tail.push_back({expo_mul((*g)[k].exp, sh), (*g)[k].pos, (*g)[k].coeff});
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
    strip(out);
    return out;
  }

  void add_element(MZPoly z) {
    strip(z);
    size_t t = basis_.size();
    const MZTerm& lt = z.front();
    for (auto& p : pairs_) {
      if (p.i == SIZE_MAX) continue;
      if (basis_[p.i].poly.front().pos != lt.pos) continue;
      if (expo_divides(lt.exp, p.lcm) &&
          expo_lcm(lt.exp, basis_[p.i].poly.front().exp) != p.lcm &&
          expo_lcm(lt.exp, basis_[p.j].poly.front().exp) != p.lcm)
        p.i = SIZE_MAX;
    }
    struct Cand {
      size_t i;
      Expo lcm;
      bool keep = true;
    };
    std::vector<Cand> cands;
    for (size_t i = 0; i < t; ++i) {
      if (basis_[i].poly.front().pos != lt.pos) continue;
      cands.push_back({i, expo_lcm(basis_[i].poly.front().exp, lt.exp)});
    }
    for (auto& c : cands) {
      if (!c.keep) continue;
      for (auto& c2 : cands) {
        if (&c2 == &c || !c2.keep) continue;
        if (c2.lcm == c.lcm) {
          if (c2.i < c.i) {
            c.keep = false;
            break;
          }
        } else if (expo_divides(c2.lcm, c.lcm)) {
          c.keep = false;
          break;
        }
      }
    }
    // No coprime criterion: it is not valid for module S-pairs.
    for (auto& c : cands) {
      if (!c.keep) continue;
      int64_t deg = R_.strategy_degree(c.lcm) + order_.shift_of(lt.pos);
      if (cap_ >= 0 && deg > cap_) continue;
      pairs_.push_back({c.i, t, c.lcm, deg});
    }
    for (size_t i = 0; i < t; ++i)
      if (!basis_[i].redundant && basis_[i].poly.front().pos == lt.pos &&
          expo_divides(lt.exp, basis_[i].poly.front().exp))
        basis_[i].redundant = true;
    basis_.push_back({std::move(z), false});
  }

  void finalize() {
    std::vector<size_t> keep;
    for (size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].redundant) continue;
      bool minimal = true;
      for (size_t j = 0; j < basis_.size() && minimal; ++j) {
        if (i == j || basis_[j].redundant) continue;
        const MZTerm& li = basis_[i].poly.front();
        const MZTerm& lj = basis_[j].poly.front();
        if (li.pos != lj.pos) continue;
        if (expo_divides(lj.exp, li.exp) && li.exp != lj.exp) minimal = false;
        if (li.exp == lj.exp && j < i) minimal = false;
      }
      if (minimal) keep.push_back(i);
    }
    std::sort(keep.begin(), keep.end(), [&](size_t a, size_t b) {
      const MZTerm& la = basis_[a].poly.front();
      const MZTerm& lb = basis_[b].poly.front();
      return cmp(la.exp, la.pos, lb.exp, lb.pos) < 0;
    });
    std::vector<MZPoly> minimal;
    for (size_t k : keep) minimal.push_back(basis_[k].poly);
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < minimal.size(); ++i) {
        MZPoly r = tail_reduce(minimal[i], minimal, i);
        if (!eq(r, minimal[i])) {
          minimal[i] = std::move(r);
          changed = true;
        }
      }
    }
    reduced_ = std::move(minimal);
  }

  MZPoly tail_reduce(const MZPoly& input, const std::vector<MZPoly>& basis, size_t skip) const {
    Geobucket<MZTerm, MZTermCmp> acc(MZTermCmp{this});
    acc.add(input, 1);
    MZPoly out;
    std::vector<uint32_t> gen;
    std::vector<Int> amults;
    Int carry(1);
    size_t steps = 0;
    while (auto top = acc.pop_max()) {
      const MZPoly* g = nullptr;
      for (size_t k = 0; k < basis.size(); ++k) {
        if (k == skip) continue;
        const MZTerm& lt = basis[k].front();
        if (lt.pos == top->pos && expo_divides(lt.exp, top->exp)) {
          g = &basis[k];
          break;
        }
      }
      if (!g) {
        MZTerm t = std::move(*top);
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
        MZPoly tail;
        tail.reserve(g->size() - 1);
        for (size_t k = 1; k < g->size(); ++k)
          tail.push_back({expo_mul((*g)[k].exp, sh), (*g)[k].pos, (*g)[k].coeff});
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
    strip(out);
    return out;
  }

  static bool eq(const MZPoly& a, const MZPoly& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i].exp != b[i].exp || a[i].pos != b[i].pos || a[i].coeff != b[i].coeff) return false;
    return true;
  }

  RingPtr ring_;
  const Ring& R_;
  size_t rank_;
  ModuleOrder order_;
  int64_t cap_;
  std::vector<MZPoly> input_;
  std::vector<Elem> basis_;
  std::vector<Pair> pairs_;
  std::vector<MZPoly> reduced_;
};

inline int MZTermCmp::operator()(const MZTerm& a, const MZTerm& b) const {
  return eng->cmp(a.exp, a.pos, b.exp, b.pos);
}

}  // namespace detail

// Groebner basis of a submodule of O^rank with membership and lifting.
class ModuleGB {
 public:
  ModuleGB(RingPtr ring, size_t rank, std::vector<VecPoly> gens,
           ModuleOrder order = ModuleOrder{}, int64_t degree_cap = -1)
      : engine_(std::make_shared<detail::ModuleEngine>(ring, rank, std::move(order), degree_cap)),
        gens_(std::move(gens)) {
    for (const auto& g : gens_) {
      if (g.size() != rank) throw std::invalid_argument("rank mismatch in module generators");
      engine_->add_input(g);
    }
    engine_->run();
  }

  const std::vector<VecPoly>& gens() const { return gens_; }
  std::vector<VecPoly> basis() const { return engine_->reduced_vectors(); }
  size_t rank() const { return engine_->rank(); }

  VecPoly normal_form(const VecPoly& v) const { return engine_->normal_form(v); }
  bool contains(const VecPoly& v) const { return vec_is_zero(normal_form(v)); }

  std::optional<std::vector<Polynomial>> lift(const VecPoly& v) const {
    std::vector<Polynomial> l;
    VecPoly r = engine_->normal_form(v, &l);
    if (!vec_is_zero(r)) return std::nullopt;
    auto monic_basis = engine_->reduced();
    for (size_t k = 0; k < l.size(); ++k) l[k] = l[k] * Rat(monic_basis[k].front().coeff);
    return l;
  }

 private:
  std::shared_ptr<detail::ModuleEngine> engine_;
  std::vector<VecPoly> gens_;
};

// Groebner basis of the submodule generated by the COLUMNS of M.
inline ModuleGB module_groebner(const PolyMatrix& M) {
  std::vector<VecPoly> gens;
  for (size_t j = 0; j < M.cols(); ++j) gens.push_back(M.column(j));
  return ModuleGB(M.ring(), M.rows(), std::move(gens));
}

inline ModuleGB module_groebner(const RingPtr& ring, size_t rank, std::vector<VecPoly> gens) {
  return ModuleGB(ring, rank, std::move(gens));
}

namespace detail {

inline ModuleGB augmented_module_gb(const PolyMatrix& M, int64_t degree_cap = -1,
                                    const std::vector<int64_t>* col_shifts = nullptr) {
  size_t r = M.rows(), s = M.cols();
  ModuleOrder ord;
  ord.pos_block.assign(r + s, 1);
  for (size_t i = 0; i < r; ++i) ord.pos_block[i] = 0;
  if (col_shifts) {
    ord.pos_shift.assign(r + s, 0);
    for (size_t j = 0; j < s; ++j) ord.pos_shift[r + j] = (*col_shifts)[j];
  }
  std::vector<VecPoly> gens;
  for (size_t j = 0; j < s; ++j) {
    VecPoly v(r + s, Polynomial::zero(M.ring()));
    for (size_t i = 0; i < r; ++i) v[i] = M.at(i, j);
    v[r + j] = Polynomial::constant(M.ring(), Rat(1));
    gens.push_back(std::move(v));
  }
  return ModuleGB(M.ring(), r + s, std::move(gens), ord, degree_cap);
}

}  // namespace detail

// Columns generate the kernel of v -> M v. With a degree cap (and column
// degree shifts making the columns homogeneous), the harvested generators
// are exactly the syzygies of degree <= cap.
inline PolyMatrix syzygies(const PolyMatrix& M, int64_t degree_cap = -1,
                           const std::vector<int64_t>* col_shifts = nullptr) {
  size_t r = M.rows(), s = M.cols();
  ModuleGB gb = detail::augmented_module_gb(M, degree_cap, col_shifts);
  std::vector<VecPoly> syz;
  for (const auto& b : gb.basis()) {
    bool upper_zero = true;
    for (size_t i = 0; i < r && upper_zero; ++i)
      if (!b[i].is_zero_poly()) upper_zero = false;
    if (!upper_zero) continue;
    VecPoly s_part(b.begin() + static_cast<long>(r), b.end());
    if (!vec_is_zero(s_part)) syz.push_back(std::move(s_part));
  }
  PolyMatrix out(M.ring(), s, std::max<size_t>(syz.size(), 1));
  for (size_t j = 0; j < syz.size(); ++j)
    for (size_t i = 0; i < s; ++i) out.at(i, j) = syz[j][i];
  return out;
}

// Membership of v in the column span of M, and the expression when wanted.
inline std::optional<std::vector<Polynomial>> lift_through(const PolyMatrix& M, const VecPoly& v) {
  size_t r = M.rows(), s = M.cols();
  ModuleGB gb = detail::augmented_module_gb(M);
  VecPoly aug(r + s, Polynomial::zero(M.ring()));
  for (size_t i = 0; i < r; ++i) aug[i] = v[i];
  VecPoly nf = gb.normal_form(aug);
  for (size_t i = 0; i < r; ++i)
    if (!nf[i].is_zero_poly()) return std::nullopt;
  std::vector<Polynomial> q;
  q.reserve(s);
  for (size_t j = 0; j < s; ++j) q.push_back(-nf[r + j]);
  return q;
}

}  // namespace germ
