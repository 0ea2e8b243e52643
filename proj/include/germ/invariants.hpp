// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Numerical invariants of map-germs and their multiple-point geometry:
// image Milnor numbers via relative-jacobian saturation (colength route with
// a Cohen-Macaulay certificate, Serre alternating-Tor route otherwise),
// delta and Milnor numbers of curve germs, de Jong's virtual count of
// transverse umbrella points, isotype dimensions of symmetric group actions
// on zero-dimensional quotients, Lefschetz/Euler bookkeeping, and T^1.

#pragma once

#include "germ/multipoint.hpp"
#include "germ/series.hpp"

namespace germ {

// ---------------------------------------------------------------------------
// vanishing-critical-point counts (shared by mu_image and siersma_count)

struct VanishingCount {
  int64_t value = 0;
  bool cm_certified = false;        // all higher Tor vanish
  int64_t colength_route = -1;      // local colength of Q + (params)
  std::vector<int64_t> tor;         // Serre route data
  Ideal saturation;                 // Q = (J_rel : G^infinity)
  int saturation_exponent = 0;
};

enum class CountMethod { Auto, Colength, Serre };

// Intersection number of V(J_rel : G^infinity) with {params = 0} at the
// origin. J_rel is spanned by the partials of G along `space_vars`.
inline VanishingCount vanishing_count(const Polynomial& G,
                                      const std::vector<std::string>& space_vars,
                                      const std::vector<std::string>& param_vars,
                                      CountMethod method = CountMethod::Auto) {
  const RingPtr& R = G.ring();
  std::vector<Polynomial> partials;
  for (const auto& v : space_vars) {
    Polynomial d = differentiate(G, v);
    if (!d.is_zero_poly()) partials.push_back(std::move(d));
  }
  VanishingCount out;
  if (partials.empty()) throw std::invalid_argument("vanishing_count: all partials vanish");
  Ideal jrel(R, partials);
  Saturation sat = saturate(jrel, G);
  out.saturation = sat.ideal;
  out.saturation_exponent = sat.exponent;
  if (out.saturation.is_unit()) {
    // no critical points move off the zero level
    out.value = 0;
    out.cm_certified = true;
    out.colength_route = 0;
    return out;
  }
  std::vector<Polynomial> params;
  for (const auto& p : param_vars) params.push_back(Polynomial::variable(R, p));
  if (params.empty()) throw std::invalid_argument("vanishing_count: no parameters");
  // Serre data: Tor_j(O/Q, O/(params)); the sequence of parameter
  // coordinates is regular on the ambient ring.
  KoszulTor tor = koszul_tor(cyclic_module(out.saturation), params);
  bool higher_vanish = true;
  int64_t alternating = 0;
  for (size_t j = 0; j < tor.dims.size(); ++j) {
    if (!tor.dims[j].finite)
      throw std::domain_error("vanishing_count: non-finite Tor dimension");
    out.tor.push_back(tor.dims[j].value);
    alternating += (j % 2 == 0 ? 1 : -1) * tor.dims[j].value;
    if (j > 0 && tor.dims[j].value != 0) higher_vanish = false;
  }
  out.cm_certified = higher_vanish;
  out.colength_route = tor.dims[0].value;  // colength of Q + (params)
  switch (method) {
    case CountMethod::Colength:
      if (!out.cm_certified)
        throw std::domain_error("vanishing_count: colength route not certified (not CM)");
      out.value = out.colength_route;
      break;
    case CountMethod::Serre:
      out.value = alternating;
      break;
    case CountMethod::Auto:
      out.value = alternating;  // equals the colength when CM
      break;
  }
  return out;
}

// Reduced equation certificate: V(G, grad G) has codimension >= 2.
inline bool squarefree_certificate(const Polynomial& G) {
  std::vector<Polynomial> gens = {G};
  for (size_t v = 0; v < G.ring()->nvars(); ++v) {
    Polynomial d = differentiate(G, v);
    if (!d.is_zero_poly()) gens.push_back(std::move(d));
  }
  Ideal sing(G.ring(), std::move(gens));
  return krull_dim(sing) <= static_cast<int>(G.ring()->nvars()) - 2;
}

struct MuImage {
  int64_t value = 0;
  VanishingCount detail;
  Polynomial image_equation;
  bool image_equation_reduced = false;
};

// Image Milnor number of the germ underlying a stable/versal unfolding F:
// G is the Fitt_0 generator of the pushforward of F, J_rel the partials in
// the non-parameter target directions, and the count is the intersection
// number of V(J_rel : G^infinity) with {params = 0}.
inline MuImage mu_image(const MapGerm& F, const std::vector<Polynomial>& basis,
                        CountMethod method = CountMethod::Auto) {
  validate(F);
  if (F.unfolding_params.empty())
    throw std::invalid_argument("mu_image: unfolding has no declared parameters");
  auto pf = pushforward_presentation(F.source, F.target, F.components, basis);
  MuImage out;
  if (pf.square) {
    out.image_equation = determinant(pf.module.presentation);
  } else {
    Ideal f0 = fitting_ideal(pf.module, 0);
    const auto& gb = f0.groebner();
    if (gb.size() != 1)
      throw std::domain_error("mu_image: Fitt_0 of the pushforward is not principal");
    out.image_equation = gb[0];
  }
  out.image_equation = monic(out.image_equation);
  out.image_equation_reduced = squarefree_certificate(out.image_equation);
  if (!out.image_equation_reduced)
    throw std::domain_error("mu_image: image equation fails the reducedness certificate");
  std::vector<std::string> space;
  for (const auto& v : F.target->vars())
    if (!F.is_param(v)) space.push_back(v);
  out.detail = vanishing_count(out.image_equation, space, F.unfolding_params, method);
  out.value = out.detail.value;
  return out;
}

// Siersma-style count for a hypersurface family given by a reduced G:
// the number of critical points moving off the zero level.
inline VanishingCount siersma_count(const Polynomial& G, const std::vector<std::string>& space_vars,
                                    const std::vector<std::string>& param_vars,
                                    CountMethod method = CountMethod::Auto) {
  if (!squarefree_certificate(G))
    throw std::invalid_argument("siersma_count: G fails the reducedness certificate");
  return vanishing_count(G, space_vars, param_vars, method);
}

// ---------------------------------------------------------------------------
// curve invariants

inline int64_t milnor_from_delta(int64_t delta, int64_t branch_count) {
  if (delta < 0 || branch_count < 1) throw std::invalid_argument("milnor_from_delta: bad inputs");
  return 2 * delta - branch_count + 1;
}

// ---------------------------------------------------------------------------
// lifted vector fields tangent to the level sets of h, and VD_infinity

template <class F>
struct ThetaLift {
  int64_t colength = 0;          // dim theta_normalization / theta(h)
  int stabilized_order = 0;
  std::vector<std::string> lift_descriptions;
};

namespace detail {

template <class F>
std::optional<int64_t> theta_colength_at_order(const Polynomial& h,
                                               const std::vector<VecPoly>& syz_gens,
                                               const BranchParam<F>& bp, int order,
                                               std::vector<std::string>* descr) {
  const RingPtr& R = h.ring();
  size_t nb = bp.branches.size();
  size_t nv = R->nvars();
  // tangent direction per branch: coordinate with the smallest derivative
  // valuation
  std::vector<std::vector<Series<F>>> gamma(nb), dgamma(nb);
  std::vector<size_t> dencoord(nb);
  std::vector<int> denval(nb);
  for (size_t i = 0; i < nb; ++i) {
    for (size_t v = 0; v < nv; ++v) {
      gamma[i].push_back(bp.branches[i].coords[v].truncated(order));
      dgamma[i].push_back(gamma[i][v].derivative());
    }
    size_t best = SIZE_MAX;
    int bestval = 0;
    for (size_t v = 0; v < nv; ++v) {
      int val = dgamma[i][v].valuation();
      if (val < dgamma[i][v].order() && (best == SIZE_MAX || val < bestval)) {
        best = v;
        bestval = val;
      }
    }
    if (best == SIZE_MAX) throw std::domain_error("theta lift: branch has vanishing derivative");
    dencoord[i] = best;
    denval[i] = bestval;
  }
  // working order per branch after the division
  std::vector<int> work(nb);
  for (size_t i = 0; i < nb; ++i) work[i] = order - 1 - denval[i];
  // lifts of the syzygy generators
  std::vector<std::vector<Series<F>>> lifts;  // tuple of tangent coefficients
  for (const auto& chi : syz_gens) {
    std::vector<Series<F>> tuple;
    for (size_t i = 0; i < nb; ++i) {
      Series<F> value = eval_on_branch(chi[dencoord[i]], bp.branches[i], order);
      Series<F> tau = divide(value, dgamma[i][dencoord[i]]);
      // exactness of the lift: chi_l(gamma(t)) == tau * gamma_l'(t) for all l
      for (size_t l = 0; l < nv; ++l) {
        Series<F> lhs = eval_on_branch(chi[l], bp.branches[i], order);
        Series<F> rhs = tau * dgamma[i][l];
        Series<F> diff = lhs - rhs;
        int common = std::min(work[i], diff.order());
        if (!diff.truncated(common).is_zero())
          throw std::domain_error("theta lift: lift is not exact within the truncation");
      }
      tuple.push_back(tau.truncated(work[i]));
    }
    lifts.push_back(std::move(tuple));
  }
  // module closure over pulled-back coordinate functions
  size_t dim = 0;
  std::vector<size_t> offset(nb);
  for (size_t i = 0; i < nb; ++i) {
    offset[i] = dim;
    dim += static_cast<size_t>(std::max(work[i], 0));
  }
  if (dim == 0) return std::nullopt;
  auto pack = [&](const std::vector<Series<F>>& tuple) {
    std::vector<typename F::Elem> v(dim, F::zero());
    for (size_t i = 0; i < nb; ++i)
      for (int k = 0; k < work[i]; ++k) v[offset[i] + static_cast<size_t>(k)] = tuple[i].coeff(k);
    return v;
  };
  std::vector<std::vector<Series<F>>> action;  // coordinate pullbacks
  for (size_t v = 0; v < nv; ++v) {
    std::vector<Series<F>> tup;
    for (size_t i = 0; i < nb; ++i) tup.push_back(gamma[i][v]);
    action.push_back(std::move(tup));
  }
  EchelonSpan<F> span(dim);
  std::vector<std::vector<Series<F>>> worklist;
  for (auto& l : lifts) {
    if (descr) {
      std::string s = "(";
      for (size_t i = 0; i < nb; ++i) s += (i ? ", " : "") + l[i].str();
      descr->push_back(s + ")");
    }
    if (span.insert(pack(l))) worklist.push_back(l);
  }
  while (!worklist.empty()) {
    auto cur = std::move(worklist.back());
    worklist.pop_back();
    for (const auto& a : action) {
      std::vector<Series<F>> prod;
      for (size_t i = 0; i < nb; ++i) prod.push_back((cur[i] * a[i]).truncated(work[i]));
      if (span.insert(pack(prod))) worklist.push_back(prod);
    }
  }
  return static_cast<int64_t>(dim) - static_cast<int64_t>(span.rank());
}

}  // namespace detail

// theta(h): restriction to the normalization of the vector fields
// annihilating h, generated by the lifted syzygies of the partials of h.
// Returns the colength inside the free tangent module of the normalization,
// stabilized in the truncation order.
template <class F>
ThetaLift<F> theta_h_lifted(const Polynomial& h, const Ideal& sigma_ideal,
                            const BranchParam<F>& bp, int start_order = 8) {
  if (!branches_lie_on(bp, sigma_ideal))
    throw std::invalid_argument("theta lift: branches do not satisfy the curve ideal");
  const RingPtr& R = h.ring();
  PolyMatrix row(R, 1, R->nvars());
  bool any = false;
  for (size_t v = 0; v < R->nvars(); ++v) {
    row.at(0, v) = differentiate(h, v);
    any = any || !row.at(0, v).is_zero_poly();
  }
  if (!any) throw std::invalid_argument("theta lift: h has vanishing gradient");
  PolyMatrix S = syzygies(row);
  std::vector<VecPoly> syz_gens;
  for (size_t j = 0; j < S.cols(); ++j) {
    VecPoly c = S.column(j);
    if (!vec_is_zero(c)) syz_gens.push_back(std::move(c));
  }
  if (syz_gens.empty()) throw std::domain_error("theta lift: no syzygies found");
  ThetaLift<F> out;
  std::optional<int64_t> prev;
  for (int N = start_order; N + 2 <= bp.order; N += 2) {
    std::vector<std::string> descr;
    auto c = detail::theta_colength_at_order<F>(h, syz_gens, bp, N, &descr);
    if (!c) continue;
    if (prev && *c == *prev) {
      out.colength = *c;
      out.stabilized_order = N;
      out.lift_descriptions = std::move(descr);
      return out;
    }
    prev = c;
  }
  throw std::runtime_error("theta lift: no stabilization before the truncation cap");
}

// de Jong's virtual number of transverse umbrella points:
// dim(theta_normalization / theta(h)) - 3 delta(Sigma).
inline int64_t vd_infinity(int64_t theta_colength, int64_t delta) {
  return theta_colength - 3 * delta;
}

// ---------------------------------------------------------------------------
// isotype dimensions of symmetric group actions

enum class SymmetricGroup { S2, S3 };

struct IsotypeVector {
  SymmetricGroup group = SymmetricGroup::S2;
  int64_t trivial = 0;
  int64_t sign = 0;
  int64_t rho = 0;  // dimension of the 2-dimensional isotype, S3 only
  int64_t total() const { return trivial + sign + rho; }
};

namespace detail {

inline std::vector<std::vector<size_t>> generate_group(
    const std::vector<std::vector<size_t>>& gens, size_t n) {
  std::vector<size_t> id(n);
  for (size_t i = 0; i < n; ++i) id[i] = i;
  std::set<std::vector<size_t>> seen{id};
  std::vector<std::vector<size_t>> list{id};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& a : std::vector<std::vector<size_t>>(list))
      for (const auto& g : gens) {
        std::vector<size_t> c(n);
        for (size_t i = 0; i < n; ++i) c[i] = g[a[i]];
        if (seen.insert(c).second) {
          list.push_back(c);
          grew = true;
        }
      }
    if (list.size() > 24) throw std::invalid_argument("permutation group too large");
  }
  return list;
}

// Order of the permutation as a group element; conjugacy classes of S2 and
// S3 are distinguished by it (1 = identity, 2 = transposition, 3 = 3-cycle)
// regardless of how many ring variables each abstract point permutes.
inline int permutation_order(const std::vector<size_t>& p) {
  std::vector<size_t> cur = p;
  std::vector<size_t> id(p.size());
  for (size_t i = 0; i < p.size(); ++i) id[i] = i;
  int ord = 1;
  while (cur != id) {
    std::vector<size_t> next(p.size());
    for (size_t i = 0; i < p.size(); ++i) next[i] = p[cur[i]];
    cur = std::move(next);
    if (++ord > 6) throw std::invalid_argument("permutation order too large for S2/S3");
  }
  return ord;
}

}  // namespace detail

// Isotype dimensions of O/I under a variable-permutation action. The action
// must preserve I; multiplicities must come out as non-negative integers.
inline IsotypeVector isotype_dims(const Ideal& I,
                                  const std::vector<std::vector<size_t>>& perm_gens,
                                  SymmetricGroup group) {
  size_t n = I.ring()->nvars();
  auto grp = detail::generate_group(perm_gens, n);
  size_t expected = group == SymmetricGroup::S2 ? 2 : 6;
  if (grp.size() != expected)
    throw std::invalid_argument("permutation generators do not generate the declared group");
  auto act_poly = [&](const Polynomial& p, const std::vector<size_t>& perm) {
    std::vector<Term> ts;
    for (const auto& t : p.terms()) {
      Expo e = expo_zero(n);
      for (size_t v = 0; v < n; ++v) e[perm[v]] += t.exp[v];
      ts.push_back({std::move(e), t.coeff});
    }
    return Polynomial(I.ring(), std::move(ts));
  };
  for (const auto& g : grp)
    for (const auto& gen : I.gens())
      if (!contains(I, act_poly(gen, g)))
        throw std::invalid_argument("isotype_dims: action does not preserve the ideal");
  QuotientBasis qb = quotient_basis(I);
  // trace of each group element on the quotient basis
  auto trace_of = [&](const std::vector<size_t>& perm) {
    Rat tr(0);
    for (const auto& m : qb.monomials) {
      Polynomial img = act_poly(Polynomial::monomial(I.ring(), m), perm);
      Polynomial nf = normal_form(img, I);
      for (const auto& t : nf.terms())
        if (t.exp == m) tr += t.coeff;
    }
    return tr;
  };
  Rat tr_e(static_cast<long>(qb.monomials.size()));
  IsotypeVector out;
  out.group = group;
  auto finish = [&](Rat mult, int deg) {
    Rat dim = mult * deg;
    if (dim.get_den() != 1 || sgn(dim) < 0)
      throw std::logic_error("isotype_dims: non-integral or negative multiplicity");
    return static_cast<int64_t>(dim.get_num().get_si());
  };
  if (group == SymmetricGroup::S2) {
    Rat tr_s(0);
    for (const auto& g : grp)
      if (detail::permutation_order(g) == 2) tr_s = trace_of(g);
    out.trivial = finish((tr_e + tr_s) / 2, 1);
    out.sign = finish((tr_e - tr_s) / 2, 1);
  } else {
    Rat sum_t(0), sum_c(0);  // transpositions, 3-cycles
    for (const auto& g : grp) {
      int ord = detail::permutation_order(g);
      if (ord == 1) continue;
      Rat tr = trace_of(g);
      if (ord == 2)
        sum_t += tr;
      else
        sum_c += tr;
    }
    out.trivial = finish((tr_e + sum_t + sum_c) / 6, 1);
    out.sign = finish((tr_e - sum_t + sum_c) / 6, 1);
    out.rho = finish((tr_e * 2 - sum_c) / 6, 2);
  }
  if (out.total() != static_cast<int64_t>(qb.monomials.size()))
    throw std::logic_error("isotype_dims: dimensions do not account for the colength");
  return out;
}

// ---------------------------------------------------------------------------
// Euler / Lefschetz bookkeeping

// chi of a double cover: 2 chi(base) - branch term.
inline int64_t branched_cover_euler(int64_t chi_base, int64_t branch_term) {
  return 2 * chi_base - branch_term;
}

// Lefschetz fixed point count on a space with homology in degrees 0 and 1
// only: fixed = 1 - trace(H_1) = 1 + h1_alt - h1_trivial, so
// h1_alt = fixed - 1 + h1_trivial.
inline int64_t lefschetz_solve(int64_t fixed_count, int64_t h1_trivial) {
  int64_t h = fixed_count - 1 + h1_trivial;
  if (h < 0) throw std::domain_error("lefschetz_solve: inconsistent inputs");
  return h;
}

// ---------------------------------------------------------------------------
// T^1 of an isolated singularity via the normal module

// dim of coker(theta_ambient -> Hom(I/I^2, O/I)) at the origin.
inline LocalColength t1_dimension(const Ideal& I) {
  const RingPtr& R = I.ring();
  size_t k = I.gens().size();
  if (k == 0) throw std::invalid_argument("t1_dimension: no generators");
  PolyMatrix row(R, 1, k);
  for (size_t j = 0; j < k; ++j) row.at(0, j) = I.gens()[j];
  PolyMatrix S = syzygies(row);  // k x m, columns are syzygies
  // Z = { v in O^k : S^T v in I O^m }
  size_t m = S.cols();
  std::vector<VecPoly> acols;
  for (size_t j = 0; j < k; ++j) {
    VecPoly col(m, Polynomial::zero(R));
    for (size_t i = 0; i < m; ++i) col[i] = S.at(j, i);
    acols.push_back(std::move(col));  // column j of S^T
  }
  for (size_t slot = 0; slot < m; ++slot)
    for (const auto& g : I.gens()) {
      VecPoly col(m, Polynomial::zero(R));
      col[slot] = g;
      acols.push_back(std::move(col));
    }
  PolyMatrix A(R, std::max<size_t>(m, 1), acols.size());
  for (size_t j = 0; j < acols.size(); ++j)
    for (size_t i = 0; i < m; ++i) A.at(i, j) = acols[j][i];
  std::vector<VecPoly> Z;
  if (m == 0) {
    for (size_t i = 0; i < k; ++i) {
      VecPoly e(k, Polynomial::zero(R));
      e[i] = Polynomial::constant(R, Rat(1));
      Z.push_back(std::move(e));
    }
  } else {
    PolyMatrix Sy = syzygies(A);
    for (size_t c = 0; c < Sy.cols(); ++c) {
      VecPoly v(k, Polynomial::zero(R));
      bool nz = false;
      for (size_t i = 0; i < k; ++i) {
        v[i] = Sy.at(i, c);
        nz = nz || !v[i].is_zero_poly();
      }
      if (nz) Z.push_back(std::move(v));
    }
  }
  // B = jacobian columns (one per ambient variable) + I O^k
  std::vector<VecPoly> B;
  for (size_t v = 0; v < R->nvars(); ++v) {
    VecPoly col(k, Polynomial::zero(R));
    bool nz = false;
    for (size_t i = 0; i < k; ++i) {
      col[i] = differentiate(I.gens()[i], v);
      nz = nz || !col[i].is_zero_poly();
    }
    if (nz) B.push_back(std::move(col));
  }
  for (size_t slot = 0; slot < k; ++slot)
    for (const auto& g : I.gens()) {
      VecPoly col(k, Polynomial::zero(R));
      col[slot] = g;
      B.push_back(std::move(col));
    }
  return subquotient_colength(R, k, Z, B);
}

}  // namespace germ
