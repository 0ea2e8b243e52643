// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Finitely presented modules: Fitting ideals, pushforward presentations via
// graph-ideal elimination, Koszul homology (Tor against a regular sequence),
// and module colengths at the origin.

#pragma once

#include "germ/ideal_ops.hpp"

namespace germ {

// Module given as the cokernel of its presentation matrix acting on free
// columns: M = O^rows / (column span).
struct PresentedModule {
  PolyMatrix presentation;
  std::vector<std::string> labels;  // one per generator (row); optional

  const RingPtr& ring() const { return presentation.ring(); }
  size_t generators() const { return presentation.rows(); }
};

inline PresentedModule cyclic_module(const Ideal& I) {
  // O/I presented by a 1 x max(1,k) row of generators.
  size_t k = std::max<size_t>(I.gens().size(), 1);
  PolyMatrix P(I.ring(), 1, k);
  for (size_t j = 0; j < I.gens().size(); ++j) P.at(0, j) = I.gens()[j];
  return PresentedModule{std::move(P), {"1"}};
}

// Fitt_k = ideal of (g-k)-size minors of the presentation, g = #generators.
// Fitt_k = (1) for g-k <= 0; Fitt_k = (0) when the minors are too large to
// exist (fewer relations than g-k).
inline Ideal fitting_ideal(const PresentedModule& M, size_t k) {
  size_t g = M.generators();
  if (k >= g) return Ideal::unit(M.ring());
  size_t size = g - k;
  if (size > M.presentation.cols()) return Ideal::zero(M.ring());
  return minors(M.presentation, size);
}

// ---------------------------------------------------------------------------
// module colength

namespace detail {

// Standard module monomials outside the lead terms of a reduced module
// basis; nullopt when infinite.
inline std::optional<int64_t> module_staircase_count(const RingPtr& ring, size_t rank,
                                                     const std::vector<VecPoly>& reduced_basis) {
  size_t n = ring->nvars();
  int64_t total = 0;
  for (size_t pos = 0; pos < rank; ++pos) {
    std::vector<Expo> leads;
    bool unit_here = false;
    for (const auto& b : reduced_basis) {
      // lead of b: the unique entry achieving the module lead; recompute as
      // the largest term across entries of the distinguished position.
      // reduced_vectors() keeps the lead entry at its position: find it.
      size_t lp = SIZE_MAX;
      const Expo* le = nullptr;
      for (size_t p = 0; p < rank; ++p) {
        if (b[p].is_zero_poly()) continue;
        if (lp == SIZE_MAX || ring->cmp(b[p].lead_exp(), *le) > 0 ||
            (ring->cmp(b[p].lead_exp(), *le) == 0 && p < lp)) {
          lp = p;
          le = &b[p].lead_exp();
        }
      }
      if (lp == pos) {
        leads.push_back(*le);
        if (expo_is_one(*le)) unit_here = true;
      }
    }
    if (unit_here) continue;
    // finite iff pure powers bound every variable at this position
    std::vector<uint32_t> bounds(n, 0);
    for (size_t v = 0; v < n; ++v) {
      bool found = false;
      uint32_t best = 0;
      for (const auto& l : leads) {
        bool pure = l[v] > 0;
        for (size_t i = 0; i < n && pure; ++i)
          if (i != v && l[i] > 0) pure = false;
        if (pure && (!found || l[v] < best)) {
          best = l[v];
          found = true;
        }
      }
      if (!found) return std::nullopt;
      bounds[v] = best;
    }
    std::vector<Expo> mons;
    Expo cur = expo_zero(n);
    staircase_rec(leads, cur, 0, bounds, mons, 50000000);
    total += static_cast<int64_t>(mons.size());
  }
  return total;
}

}  // namespace detail

// Positive weights making every column of a module generating set
// homogeneous up to per-position degree shifts.
inline std::optional<std::vector<int64_t>> find_positive_weights_module(
    const RingPtr& ring, size_t rank, const std::vector<VecPoly>& cols) {
  size_t n = ring->nvars();
  // Unknowns: w_0..w_{n-1}, s_1..s_{rank-1} (s_0 = 0). Homogeneity rows as
  // in the ideal case plus cross-entry rows inside each column.
  size_t d = n + (rank > 0 ? rank - 1 : 0);
  std::vector<std::vector<Rat>> D;
  auto shift_index = [&](size_t pos) -> int {
    return pos == 0 ? -1 : static_cast<int>(n + pos - 1);
  };
  for (const auto& col : cols) {
    int first_pos = -1;
    const Expo* first_exp = nullptr;
    for (size_t p = 0; p < col.size(); ++p) {
      if (col[p].is_zero_poly()) continue;
      const Expo& e0 = col[p].terms()[0].exp;
      for (size_t t = 1; t < col[p].nterms(); ++t) {
        std::vector<Rat> row(d, Rat(0));
        for (size_t i = 0; i < n; ++i)
          row[i] = Rat(static_cast<long>(col[p].terms()[t].exp[i]) - static_cast<long>(e0[i]));
        D.push_back(std::move(row));
      }
      if (first_pos < 0) {
        first_pos = static_cast<int>(p);
        first_exp = &e0;
      } else {
        std::vector<Rat> row(d, Rat(0));
        for (size_t i = 0; i < n; ++i)
          row[i] = Rat(static_cast<long>(e0[i]) - static_cast<long>((*first_exp)[i]));
        int sp = shift_index(p), sf = shift_index(static_cast<size_t>(first_pos));
        if (sp >= 0) row[sp] += 1;
        if (sf >= 0) row[sf] -= 1;
        D.push_back(std::move(row));
      }
    }
  }
  // Nullspace + positivity on the first n coordinates only.
  std::vector<std::vector<Rat>> M = D;
  std::vector<int> pivot_col;
  size_t rk = 0;
  for (size_t col = 0; col < d && rk < M.size(); ++col) {
    size_t piv = SIZE_MAX;
    for (size_t r = rk; r < M.size(); ++r)
      if (sgn(M[r][col]) != 0) {
        piv = r;
        break;
      }
    if (piv == SIZE_MAX) continue;
    std::swap(M[rk], M[piv]);
    Rat p = M[rk][col];
    for (auto& c : M[rk]) c /= p;
    for (size_t r = 0; r < M.size(); ++r) {
      if (r == rk || sgn(M[r][col]) == 0) continue;
      Rat f = M[r][col];
      for (size_t c = 0; c < d; ++c) M[r][c] -= f * M[rk][c];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++rk;
  }
  std::vector<int> free_cols;
  for (size_t c = 0; c < d; ++c)
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(c)) == pivot_col.end())
      free_cols.push_back(static_cast<int>(c));
  if (free_cols.empty()) return std::nullopt;
  size_t fd = free_cols.size();
  std::vector<std::vector<Rat>> N(d, std::vector<Rat>(fd, Rat(0)));
  for (size_t k = 0; k < fd; ++k) {
    N[free_cols[k]][k] = Rat(1);
    for (size_t r = 0; r < rk; ++r) N[pivot_col[r]][k] = -M[r][free_cols[k]];
  }
  std::vector<std::vector<Rat>> A(N.begin(), N.begin() + n);  // w rows only
  std::vector<Rat> ones(n, Rat(1));
  auto x = detail::fm_solve(A, ones);
  if (!x) return std::nullopt;
  std::vector<Rat> w(n, Rat(0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < fd; ++k) w[i] += N[i][k] * (*x)[k];
  Int l(1);
  for (const auto& wi : w) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), wi.get_den().get_mpz_t());
  std::vector<int64_t> wi(n);
  for (size_t i = 0; i < n; ++i) {
    Rat s = w[i] * Rat(l);
    if (sgn(s) <= 0 || s.get_den() != 1 || !s.get_num().fits_slong_p()) return std::nullopt;
    wi[i] = s.get_num().get_si();
  }
  return wi;
}

// dim at the origin of O^rank / <cols>: graded fast path, else m-power
// stabilization per free summand.
inline LocalColength module_colength(const RingPtr& ring, size_t rank,
                                     const std::vector<VecPoly>& cols, int cap = 24) {
  LocalColength out;
  std::vector<VecPoly> nonzero;
  for (const auto& c : cols)
    if (!vec_is_zero(c)) nonzero.push_back(c);
  if (find_positive_weights_module(ring, rank, nonzero)) {
    ModuleGB gb(ring, rank, nonzero);
    auto cnt = detail::module_staircase_count(ring, rank, gb.basis());
    if (cnt) {
      out.finite = true;
      out.value = *cnt;
    }
    return out;
  }
  int64_t prev = -1;
  for (int N = 1; N <= cap; ++N) {
    std::vector<VecPoly> gens = nonzero;
    auto ms = detail::degree_monomials(ring, static_cast<uint32_t>(N));
    for (size_t p = 0; p < rank; ++p)
      for (const auto& m : ms) {
        VecPoly v(rank, Polynomial::zero(ring));
        v[p] = m;
        gens.push_back(std::move(v));
      }
    ModuleGB gb(ring, rank, gens);
    auto cnt = detail::module_staircase_count(ring, rank, gb.basis());
    if (!cnt) throw std::logic_error("module staircase with m-power must be finite");
    if (*cnt == prev) {
      out.finite = true;
      out.value = *cnt;
      out.stabilized_at = N;
      return out;
    }
    prev = *cnt;
  }
  out.finite = false;
  return out;
}

// dim at the origin of coker(P).
inline LocalColength module_local_colength(const PresentedModule& M, int cap = 24) {
  std::vector<VecPoly> cols;
  for (size_t j = 0; j < M.presentation.cols(); ++j) cols.push_back(M.presentation.column(j));
  return module_colength(M.ring(), M.generators(), cols, cap);
}

// ---------------------------------------------------------------------------
// subquotients Z/B with B inside Z inside O^rank

// Colength at the origin of span(Z)/span(B); requires every B column to lie
// in span(Z).
inline LocalColength subquotient_colength(const RingPtr& ring, size_t rank,
                                          const std::vector<VecPoly>& Z,
                                          const std::vector<VecPoly>& B) {
  std::vector<VecPoly> Znz;
  for (const auto& z : Z)
    if (!vec_is_zero(z)) Znz.push_back(z);
  if (Znz.empty()) {
    LocalColength out;
    out.finite = true;
    out.value = 0;
    return out;
  }
  PolyMatrix Zm(ring, rank, Znz.size());
  for (size_t j = 0; j < Znz.size(); ++j)
    for (size_t i = 0; i < rank; ++i) Zm.at(i, j) = Znz[j][i];
  // Presentation of Z/B on the generators Z: lifted B columns plus the
  // syzygies among the Z generators.
  std::vector<VecPoly> rel_cols;
  for (const auto& b : B) {
    if (vec_is_zero(b)) continue;
    auto q = lift_through(Zm, b);
    if (!q) throw std::logic_error("subquotient: B generator outside Z");
    rel_cols.push_back(*q);
  }
  PolyMatrix S = syzygies(Zm);
  for (size_t j = 0; j < S.cols(); ++j) {
    VecPoly c = S.column(j);
    if (!vec_is_zero(c)) rel_cols.push_back(std::move(c));
  }
  return module_colength(ring, Znz.size(), rel_cols);
}

// ---------------------------------------------------------------------------
// Koszul homology: Tor_j(M, O/(seq))

// Local dimensions of Tor_j(M, O/(f_1..f_s)) for j = 0..s, via the Koszul
// complex of the sequence tensored with M. The sequence must be regular on
// the ambient ring (checked through the dimension drop), which makes the
// Koszul complex a resolution of O/(seq).
struct KoszulTor {
  std::vector<LocalColength> dims;  // index j = homological degree
};

inline KoszulTor koszul_tor(const PresentedModule& M, const std::vector<Polynomial>& seq,
                            int cap = 24) {
  const RingPtr& R = M.ring();
  size_t s = seq.size();
  size_t g = M.generators();
  // regularity check: dim drops by the length of the sequence
  {
    Ideal J(R, seq);
    int expect = static_cast<int>(R->nvars() - s);
    if (krull_dim(J) != expect)
      throw std::invalid_argument("koszul_tor: sequence is not regular on the ambient ring");
  }
  // Basis of Lambda^j: subsets of {0..s-1} in lex order.
  std::vector<std::vector<std::vector<size_t>>> bases(s + 1);
  for (size_t j = 0; j <= s; ++j)
    detail::for_each_subset(s, j, [&](const std::vector<size_t>& sub) { bases[j].push_back(sub); });
  // d_j : K_j -> K_{j-1} as scalar matrices over O.
  auto koszul_matrix = [&](size_t j) {
    PolyMatrix D(R, bases[j - 1].size(), bases[j].size());
    for (size_t cj = 0; cj < bases[j].size(); ++cj) {
      const auto& sub = bases[j][cj];
      for (size_t k = 0; k < sub.size(); ++k) {
        std::vector<size_t> face;
        for (size_t i = 0; i < sub.size(); ++i)
          if (i != k) face.push_back(sub[i]);
        size_t ri = 0;
        while (bases[j - 1][ri] != face) ++ri;
        Polynomial c = seq[sub[k]];
        if (k % 2 == 1) c.negate_inplace();
        D.at(ri, cj) = c;
      }
    }
    return D;
  };
  // embed the presentation columns into each slot of (O^g)^slots
  auto pres_cols_embedded = [&](size_t slots) {
    std::vector<VecPoly> cols;
    for (size_t sl = 0; sl < slots; ++sl)
      for (size_t j = 0; j < M.presentation.cols(); ++j) {
        VecPoly v(g * slots, Polynomial::zero(R));
        for (size_t i = 0; i < g; ++i) v[sl * g + i] = M.presentation.at(i, j);
        cols.push_back(std::move(v));
      }
    return cols;
  };
  // D_j tensor identity on O^g, as columns over O^{g * c_{j-1}}
  auto dj_cols = [&](size_t j) {
    PolyMatrix D = koszul_matrix(j);
    std::vector<VecPoly> cols;
    for (size_t cj = 0; cj < D.cols(); ++cj)
      for (size_t i = 0; i < g; ++i) {
        VecPoly v(g * D.rows(), Polynomial::zero(R));
        for (size_t ri = 0; ri < D.rows(); ++ri) v[ri * g + i] = D.at(ri, cj);
        cols.push_back(std::move(v));
      }
    return cols;
  };

  KoszulTor out;
  out.dims.resize(s + 1);
  for (size_t j = 0; j <= s; ++j) {
    size_t cj = bases[j].size();
    size_t rank_j = g * cj;
    // Z_j: kernel of d_j into M^{c_{j-1}} (everything for j = 0).
    std::vector<VecPoly> Z;
    if (j == 0) {
      for (size_t i = 0; i < rank_j; ++i) {
        VecPoly e(rank_j, Polynomial::zero(R));
        e[i] = Polynomial::constant(R, Rat(1));
        Z.push_back(std::move(e));
      }
    } else {
      size_t rank_tgt = g * bases[j - 1].size();
      auto dcols = dj_cols(j);
      auto pcols = pres_cols_embedded(bases[j - 1].size());
      // syzygies of [D_j | P_embedded], projected to the D_j block
      PolyMatrix A(R, rank_tgt, dcols.size() + pcols.size());
      for (size_t c = 0; c < dcols.size(); ++c)
        for (size_t i = 0; i < rank_tgt; ++i) A.at(i, c) = dcols[c][i];
      for (size_t c = 0; c < pcols.size(); ++c)
        for (size_t i = 0; i < rank_tgt; ++i) A.at(i, dcols.size() + c) = pcols[c][i];
      PolyMatrix S = syzygies(A);
      for (size_t c = 0; c < S.cols(); ++c) {
        VecPoly v(rank_j, Polynomial::zero(R));
        bool nz = false;
        for (size_t i = 0; i < rank_j; ++i) {
          v[i] = S.at(i, c);
          nz = nz || !v[i].is_zero_poly();
        }
        if (nz) Z.push_back(std::move(v));
      }
    }
    // B_j: image of d_{j+1} plus the presentation in each slot.
    std::vector<VecPoly> B = pres_cols_embedded(cj);
    if (j < s) {
      auto next = dj_cols(j + 1);
      B.insert(B.end(), next.begin(), next.end());
    }
    out.dims[j] = subquotient_colength(R, rank_j, Z, B);
  }
  return out;
}

// ---------------------------------------------------------------------------
// pushforward presentations

struct PushforwardResult {
  PresentedModule module;          // presentation over the target ring
  int64_t multiplicity = 0;        // dim O_src / f^* m_tgt
  bool square = false;
};

// Presentation of f_* (O_src / extra) as a module over the target ring,
// on the given generators (monomials of the source ring). Built from the
// graph ideal (Y_i - f_i) by a module elimination of the source variables.
//
// The generator set must generate O_src/(f^* m_tgt + extra); this is
// verified by reducing the candidate generators against that ideal and
// checking they span the quotient.
inline PushforwardResult pushforward_presentation(const RingPtr& src, const RingPtr& tgt,
                                                  const std::vector<Polynomial>& components,
                                                  const std::vector<Polynomial>& basis,
                                                  const Ideal* extra = nullptr) {
  if (components.size() != tgt->nvars())
    throw std::invalid_argument("component count must match target ring");
  size_t n = src->nvars(), m = basis.size();
  // multiplicity / generation check over the source ring
  std::vector<Polynomial> mgens = components;
  if (extra)
    for (const auto& g : extra->gens()) mgens.push_back(g);
  Ideal pullback_m(src, mgens);
  QuotientBasis qb = quotient_basis(pullback_m);  // throws when f not finite on O/extra
  int64_t mult = static_cast<int64_t>(qb.monomials.size());
  {
    // the basis residues must span O/(f^* m + extra)
    std::vector<std::vector<Rat>> rows;
    for (const auto& b : basis) {
      Polynomial nf = normal_form(b, pullback_m);
      std::vector<Rat> row(qb.monomials.size(), Rat(0));
      for (const auto& t : nf.terms()) {
        auto it = std::find(qb.monomials.begin(), qb.monomials.end(), t.exp);
        if (it == qb.monomials.end()) throw std::logic_error("normal form outside staircase");
        row[static_cast<size_t>(it - qb.monomials.begin())] = t.coeff;
      }
      rows.push_back(std::move(row));
    }
    size_t rank = 0;
    for (size_t col = 0; col < qb.monomials.size(); ++col) {
      size_t piv = SIZE_MAX;
      for (size_t r = rank; r < rows.size(); ++r)
        if (sgn(rows[r][col]) != 0) {
          piv = r;
          break;
        }
      if (piv == SIZE_MAX) continue;
      std::swap(rows[rank], rows[piv]);
      for (size_t r = 0; r < rows.size(); ++r) {
        if (r == rank) continue;
        if (sgn(rows[r][col]) == 0) continue;
        Rat f = rows[r][col] / rows[rank][col];
        for (size_t c = col; c < qb.monomials.size(); ++c) rows[r][c] -= f * rows[rank][c];
      }
      ++rank;
    }
    if (rank != qb.monomials.size())
      throw std::invalid_argument("pushforward: basis does not generate the pushforward module");
  }
  // Product ring with the source block eliminated. A target variable that
  // shares its name with a source variable and maps identically (an
  // unfolding parameter) appears once, outside the elimination block, with
  // no graph relation; any other name collision is an error.
  std::vector<bool> shared(tgt->nvars(), false);
  for (size_t i = 0; i < tgt->nvars(); ++i) {
    const std::string& v = tgt->var_name(i);
    if (src->var_index(v) < 0) continue;
    if (components[i] == Polynomial::variable(src, v))
      shared[i] = true;
    else
      throw std::invalid_argument("source and target share the non-parameter variable " + v);
  }
  std::vector<std::string> pvars;
  size_t elim_count = 0;
  for (const auto& v : src->vars()) {
    bool is_shared = false;
    for (size_t i = 0; i < tgt->nvars(); ++i)
      if (shared[i] && tgt->var_name(i) == v) is_shared = true;
    if (!is_shared) {
      pvars.push_back(v);
      ++elim_count;
    }
  }
  for (size_t i = 0; i < tgt->nvars(); ++i)
    if (!shared[i]) pvars.push_back(tgt->var_name(i));
  for (size_t i = 0; i < tgt->nvars(); ++i)
    if (shared[i]) pvars.push_back(tgt->var_name(i));
  RingPtr prod = make_ring(pvars, MonomialOrder::elimination_block(elim_count));
  std::vector<VecPoly> gens;
  auto embed_src = [&](const Polynomial& p) { return transport(p, prod); };
  // [b_j ; e_j]
  for (size_t j = 0; j < m; ++j) {
    VecPoly v(1 + m, Polynomial::zero(prod));
    v[0] = embed_src(basis[j]);
    v[1 + j] = Polynomial::constant(prod, Rat(1));
    gens.push_back(std::move(v));
  }
  // graph ideal and extra relations in slot 0
  for (size_t i = 0; i < components.size(); ++i) {
    if (shared[i]) continue;  // parameter: the two copies are one variable
    VecPoly v(1 + m, Polynomial::zero(prod));
    v[0] = Polynomial::variable(prod, tgt->var_name(i)) - embed_src(components[i]);
    gens.push_back(std::move(v));
  }
  if (extra)
    for (const auto& g : extra->gens()) {
      VecPoly v(1 + m, Polynomial::zero(prod));
      v[0] = embed_src(g);
      gens.push_back(std::move(v));
    }
  ModuleOrder ord;
  ord.pos_block.assign(1 + m, 1);
  ord.pos_block[0] = 0;
  ModuleGB gb(prod, 1 + m, std::move(gens), ord);
  // harvest: zero value slot, coefficients free of the eliminated variables
  std::vector<int> to_target(prod->nvars(), -1);
  for (size_t i = 0; i < tgt->nvars(); ++i)
    to_target[static_cast<size_t>(prod->var_index(tgt->var_name(i)))] = static_cast<int>(i);
  std::vector<VecPoly> rel_cols;
  for (const auto& b : gb.basis()) {
    if (!b[0].is_zero_poly()) continue;
    bool tgt_only = true;
    for (size_t j = 1; j <= m && tgt_only; ++j)
      for (size_t v = 0; v < elim_count && tgt_only; ++v)
        if (b[j].depends_on(v)) tgt_only = false;
    if (!tgt_only) continue;
    VecPoly col(m, Polynomial::zero(tgt));
    bool nz = false;
    for (size_t j = 0; j < m; ++j) {
      col[j] = map_vars(b[1 + j], tgt, to_target);
      nz = nz || !col[j].is_zero_poly();
    }
    if (nz) rel_cols.push_back(std::move(col));
  }
  if (rel_cols.empty()) throw std::logic_error("pushforward: no relations found");
  // prune redundant columns toward a square (minimal) presentation
  bool pruned = true;
  while (pruned && rel_cols.size() > m) {
    pruned = false;
    for (size_t drop = rel_cols.size(); drop-- > 0;) {
      std::vector<VecPoly> rest;
      for (size_t j = 0; j < rel_cols.size(); ++j)
        if (j != drop) rest.push_back(rel_cols[j]);
      ModuleGB rgb(tgt, m, rest);
      if (rgb.contains(rel_cols[drop])) {
        rel_cols.erase(rel_cols.begin() + static_cast<long>(drop));
        pruned = true;
        break;
      }
    }
  }
  PolyMatrix P(tgt, m, rel_cols.size());
  for (size_t j = 0; j < rel_cols.size(); ++j)
    for (size_t i = 0; i < m; ++i) P.at(i, j) = rel_cols[j][i];
  PushforwardResult out{PresentedModule{std::move(P), {}}, mult,
                        rel_cols.size() == m};
  for (const auto& b : basis) out.module.labels.push_back(print_poly(b));
  return out;
}

}  // namespace germ
