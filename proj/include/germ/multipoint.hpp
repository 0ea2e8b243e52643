// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Multiple-point ideals and loci of map-germs (C^n,0) -> (C^{n+1},0):
// source double points from the divided-difference alpha matrix, corank-1
// D^k via interpolation coefficients, target loci via Fitting ideals of the
// pushforward, the second-order Thom-Boardman ideal, the shadow component,
// and exact multiple points of multi-germ families.

#pragma once

#include "germ/modfit.hpp"

namespace germ {

struct MapGerm {
  RingPtr source;  // n variables, unfolding parameters included
  RingPtr target;  // n+1 variables, unfolding parameters included
  std::vector<Polynomial> components;         // over the source ring
  std::vector<std::string> unfolding_params;  // shared names in both rings
  std::optional<std::string> corank1_var;     // distinguished variable, if any

  size_t param_count() const { return unfolding_params.size(); }
  bool is_param(const std::string& v) const {
    return std::find(unfolding_params.begin(), unfolding_params.end(), v) !=
           unfolding_params.end();
  }
};

inline void validate(const MapGerm& f) {
  if (f.components.size() != f.target->nvars())
    throw std::invalid_argument("component count must equal target dimension");
  for (const auto& p : f.unfolding_params) {
    if (f.source->var_index(p) < 0 || f.target->var_index(p) < 0)
      throw std::invalid_argument("unfolding parameter " + p + " missing from a ring");
    // the parameter maps identically
    const Polynomial& comp = f.components[static_cast<size_t>(f.target->var_index(p))];
    if (comp != Polynomial::variable(f.source, p))
      throw std::invalid_argument("unfolding parameter " + p + " does not map identically");
  }
  for (const auto& c : f.components)
    for (const auto& t : c.terms())
      if (expo_is_one(t.exp))
        throw std::invalid_argument("germ does not send the origin to the origin");
  if (f.corank1_var && f.source->var_index(*f.corank1_var) < 0)
    throw std::invalid_argument("distinguished variable missing from the source ring");
}

// f^* I for an ideal over the target ring.
inline Ideal pullback_ideal(const MapGerm& f, const Ideal& I_target) {
  std::vector<std::optional<Polynomial>> images(f.target->nvars());
  for (size_t v = 0; v < f.target->nvars(); ++v) images[v] = f.components[v];
  std::vector<Polynomial> gens;
  for (const auto& g : I_target.gens()) gens.push_back(substitute(g, images, f.source));
  return Ideal(f.source, std::move(gens));
}

inline PolyMatrix jacobian(const MapGerm& f) {
  PolyMatrix J(f.source, f.components.size(), f.source->nvars());
  for (size_t i = 0; i < f.components.size(); ++i)
    for (size_t j = 0; j < f.source->nvars(); ++j) J.at(i, j) = differentiate(f.components[i], j);
  return J;
}

// Ramification ideal: maximal minors of the jacobian.
inline Ideal ramification_ideal(const MapGerm& f) { return minors(jacobian(f), f.source->nvars()); }

// ---------------------------------------------------------------------------
// double points at the source

struct DoublePointData {
  RingPtr ring;        // doubled non-parameter variables, parameters shared
  Ideal ideal;         // I_2(f)
  Ideal diagonal;      // ideal of the small diagonal (x1 - x2 components)
  std::vector<int> copy1, copy2;  // source var index -> doubled ring index
};

// I_2(f) = (f x f)^*(I_diagonal) + min_n(alpha), with alpha built by
// telescoping divided differences in the fixed source variable order.
inline DoublePointData double_point_ideal(const MapGerm& f) {
  validate(f);
  const RingPtr& S = f.source;
  std::vector<std::string> dvars;
  std::vector<int> copy1(S->nvars()), copy2(S->nvars());
  std::vector<size_t> doubled;  // non-parameter source vars
  for (size_t v = 0; v < S->nvars(); ++v) {
    const std::string& name = S->var_name(v);
    if (f.is_param(name)) continue;
    doubled.push_back(v);
  }
  for (size_t v : doubled) dvars.push_back(S->var_name(v) + "_1");
  for (size_t v : doubled) dvars.push_back(S->var_name(v) + "_2");
  for (size_t v = 0; v < S->nvars(); ++v)
    if (f.is_param(S->var_name(v))) dvars.push_back(S->var_name(v));
  RingPtr D = make_ring(dvars, MonomialOrder::grevlex());
  for (size_t v = 0; v < S->nvars(); ++v) copy1[v] = copy2[v] = D->var_index(S->var_name(v));
  for (size_t i = 0; i < doubled.size(); ++i) {
    copy1[doubled[i]] = D->var_index(S->var_name(doubled[i]) + "_1");
    copy2[doubled[i]] = D->var_index(S->var_name(doubled[i]) + "_2");
  }
  auto image_of = [&](const std::vector<int>& copy) {
    std::vector<std::optional<Polynomial>> images(S->nvars());
    for (size_t v = 0; v < S->nvars(); ++v)
      images[v] = Polynomial::variable(D, static_cast<size_t>(copy[v]));
    return images;
  };
  auto im1 = image_of(copy1), im2 = image_of(copy2);
  std::vector<Polynomial> diag_gens;
  for (size_t i = 0; i < f.components.size(); ++i) {
    Polynomial d = substitute(f.components[i], im1, D) - substitute(f.components[i], im2, D);
    if (!d.is_zero_poly()) diag_gens.push_back(std::move(d));
  }
  // alpha: rows = components, cols = doubled variables; telescoping order.
  PolyMatrix alpha(D, f.components.size(), doubled.size());
  for (size_t i = 0; i < f.components.size(); ++i) {
    // step(j): variables doubled[0..j) at copy 2, the rest at copy 1
    auto step_image = [&](size_t j) {
      std::vector<std::optional<Polynomial>> images(S->nvars());
      for (size_t v = 0; v < S->nvars(); ++v)
        images[v] = Polynomial::variable(D, static_cast<size_t>(copy1[v]));
      for (size_t t = 0; t < j; ++t)
        images[doubled[t]] = Polynomial::variable(D, static_cast<size_t>(copy2[doubled[t]]));
      return images;
    };
    for (size_t j = 0; j < doubled.size(); ++j) {
      Polynomial num = substitute(f.components[i], step_image(j), D) -
                       substitute(f.components[i], step_image(j + 1), D);
      if (num.is_zero_poly()) continue;
      Polynomial den = Polynomial::variable(D, static_cast<size_t>(copy1[doubled[j]])) -
                       Polynomial::variable(D, static_cast<size_t>(copy2[doubled[j]]));
      alpha.at(i, j) = divide_exact(num, den);
    }
  }
  Ideal min_alpha = minors(alpha, doubled.size());
  std::vector<Polynomial> gens = diag_gens;
  for (const auto& g : min_alpha.gens()) gens.push_back(g);
  std::vector<Polynomial> small_diag;
  for (size_t v : doubled)
    small_diag.push_back(Polynomial::variable(D, static_cast<size_t>(copy1[v])) -
                         Polynomial::variable(D, static_cast<size_t>(copy2[v])));
  return DoublePointData{D, Ideal(D, std::move(gens)), Ideal(D, std::move(small_diag)), copy1,
                         copy2};
}

// Swap of the two copies, as a substitution map on the doubled ring.
inline Polynomial swap_copies(const Polynomial& p, const DoublePointData& d,
                              const MapGerm& f) {
  std::vector<std::optional<Polynomial>> images(d.ring->nvars());
  for (size_t v = 0; v < d.ring->nvars(); ++v) images[v] = Polynomial::variable(d.ring, v);
  for (size_t v = 0; v < f.source->nvars(); ++v) {
    if (d.copy1[v] == d.copy2[v]) continue;
    images[static_cast<size_t>(d.copy1[v])] =
        Polynomial::variable(d.ring, static_cast<size_t>(d.copy2[v]));
    images[static_cast<size_t>(d.copy2[v])] =
        Polynomial::variable(d.ring, static_cast<size_t>(d.copy1[v]));
  }
  return substitute(p, images, d.ring);
}

// ---------------------------------------------------------------------------
// corank-1 D^k via interpolation coefficients

// Lagrange coefficient c_l of the degree-(k-1) interpolation of values
// f(nodes[j]) at the nodes: det of the Vandermonde with column l replaced by
// the values, divided exactly by the Vandermonde determinant.
inline Polynomial lagrange_coefficient(const RingPtr& R, const std::vector<Polynomial>& nodes,
                                       const std::vector<Polynomial>& values, size_t l) {
  size_t k = nodes.size();
  PolyMatrix M(R, k, k);
  for (size_t j = 0; j < k; ++j)
    for (size_t c = 0; c < k; ++c)
      M.at(j, c) = (c == l) ? values[j] : pow(nodes[j], static_cast<unsigned>(c));
  Polynomial num = determinant(M);
  for (size_t a = 0; a < k; ++a)
    for (size_t b = a + 1; b < k; ++b) {
      if (num.is_zero_poly()) return num;
      num = divide_exact(num, nodes[b] - nodes[a]);
    }
  return num;
}

struct CorankOneDk {
  RingPtr ring;   // x-vars (and parameters) plus y_1..y_k
  Ideal ideal;    // D^k ideal
  std::vector<size_t> slot_vars;  // indices of y_1..y_k in `ring`
};

// D^k of a linearly adapted corank-1 germ f = (x, f_2(x,y), ...): for each
// nontrivial component, the k-1 nonconstant interpolation coefficients
// through the nodes y_1..y_k.
inline CorankOneDk corank1_dk_ideal(const MapGerm& f, size_t k) {
  validate(f);
  if (!f.corank1_var) throw std::invalid_argument("germ has no distinguished corank-1 variable");
  const std::string& y = *f.corank1_var;
  size_t yidx = static_cast<size_t>(f.source->var_index(y));
  // adapted form: every other source variable must appear among components
  std::vector<bool> is_component_var(f.source->nvars(), false);
  for (const auto& c : f.components)
    if (c.nterms() == 1 && c.lead_coeff() == 1 && Ring::total_degree(c.lead_exp()) == 1)
      for (size_t v = 0; v < f.source->nvars(); ++v)
        if (c.lead_exp()[v] == 1) is_component_var[v] = true;
  for (size_t v = 0; v < f.source->nvars(); ++v)
    if (v != yidx && !is_component_var[v])
      throw std::invalid_argument("germ is not in linearly adapted corank-1 form: variable " +
                                  f.source->var_name(v) + " is not a component");
  std::vector<std::string> vars;
  for (size_t v = 0; v < f.source->nvars(); ++v)
    if (v != yidx) vars.push_back(f.source->var_name(v));
  std::vector<size_t> slot_vars;
  for (size_t j = 1; j <= k; ++j) vars.push_back(y + "_" + std::to_string(j));
  RingPtr R = make_ring(vars, MonomialOrder::grevlex());
  for (size_t j = 1; j <= k; ++j)
    slot_vars.push_back(static_cast<size_t>(R->var_index(y + "_" + std::to_string(j))));
  std::vector<Polynomial> nodes;
  for (size_t j = 0; j < k; ++j) nodes.push_back(Polynomial::variable(R, slot_vars[j]));
  std::vector<Polynomial> gens;
  for (const auto& comp : f.components) {
    // skip the trivial components (bare source variables)
    if (comp.nterms() == 1 && comp.lead_coeff() == 1 &&
        Ring::total_degree(comp.lead_exp()) == 1 && comp.lead_exp()[yidx] == 0)
      continue;
    std::vector<Polynomial> values;
    for (size_t j = 0; j < k; ++j) {
      std::vector<std::optional<Polynomial>> images(f.source->nvars());
      for (size_t v = 0; v < f.source->nvars(); ++v) {
        if (v == yidx)
          images[v] = nodes[j];
        else
          images[v] = Polynomial::variable(R, f.source->var_name(v));
      }
      values.push_back(substitute(comp, images, R));
    }
    for (size_t l = 1; l < k; ++l) gens.push_back(lagrange_coefficient(R, nodes, values, l));
  }
  return CorankOneDk{R, Ideal(R, std::move(gens)), slot_vars};
}

// ---------------------------------------------------------------------------
// target and source multiple loci through Fitting ideals

// Fitt_{k-1} of the pushforward: the target k-fold locus M_k(f).
inline Ideal target_multiple_locus(const MapGerm& f, size_t k,
                                   const std::vector<Polynomial>& basis) {
  validate(f);
  auto pf = pushforward_presentation(f.source, f.target, f.components, basis);
  return fitting_ideal(pf.module, k - 1);
}

// f^*(Fitt_2): the source triple locus D^3_1(f).
inline Ideal source_triple_locus(const MapGerm& f, const std::vector<Polynomial>& basis) {
  validate(f);
  auto pf = pushforward_presentation(f.source, f.target, f.components, basis);
  return pullback_ideal(f, fitting_ideal(pf.module, 2));
}

// Raw second-order Thom-Boardman ideal: maximal minors of the jacobian
// stacked with the jacobian of the ramification ideal generators. Callers
// certify a cleaned candidate with same_zero_set.
inline Ideal sigma11_ideal(const MapGerm& f) {
  validate(f);
  PolyMatrix J = jacobian(f);
  Ideal R = ramification_ideal(f);
  if (R.gens().empty()) return Ideal::zero(f.source);
  PolyMatrix JR(f.source, R.gens().size(), f.source->nvars());
  for (size_t i = 0; i < R.gens().size(); ++i)
    for (size_t j = 0; j < f.source->nvars(); ++j) JR.at(i, j) = differentiate(R.gens()[i], j);
  PolyMatrix stacked = matrix_concat(J, JR, ConcatAxis::Vertical);
  return minors(stacked, f.source->nvars());
}

// Shadow component pipeline: I_0 a certified radical candidate for
// Fitt_0(f_*(O/R_f)), I_1 = f^* I_0, I_2 = I_1 : R_f^infinity.
struct ShadowResult {
  Ideal ideal;            // I_2
  Ideal fitt0_pushdown;   // Fitt_0(f_*(O/R_f)) as computed
  bool certified = false; // same_zero_set(candidate, fitt0_pushdown)
};

inline ShadowResult shadow_ideal(const MapGerm& f, const Ideal& radical_candidate) {
  validate(f);
  Ideal R = ramification_ideal(f);
  // auto basis: the staircase of f^*m + R_f spans the pushforward of O/R_f
  std::vector<Polynomial> mgens = f.components;
  for (const auto& g : R.gens()) mgens.push_back(g);
  QuotientBasis qb = quotient_basis(Ideal(f.source, mgens));
  std::vector<Polynomial> basis;
  for (const auto& e : qb.monomials) basis.push_back(Polynomial::monomial(f.source, e));
  auto pf = pushforward_presentation(f.source, f.target, f.components, basis, &R);
  Ideal fitt0 = fitting_ideal(pf.module, 0);
  ShadowResult out{Ideal::zero(f.source), fitt0, false};
  out.certified = same_zero_set(radical_candidate, fitt0);
  if (!out.certified)
    throw std::invalid_argument("shadow_ideal: radical candidate fails the zero-set certificate");
  Ideal I1 = pullback_ideal(f, radical_candidate);
  out.ideal = saturate_ideal(I1, R);
  return out;
}

// ---------------------------------------------------------------------------
// multi-germs and their exact multiple points

struct MultiGerm {
  std::vector<MapGerm> branches;  // shared target ring
};

inline void validate(const MultiGerm& g) {
  if (g.branches.empty()) throw std::invalid_argument("empty multigerm");
  for (const auto& b : g.branches) {
    validate(b);
    if (!(b.target == g.branches[0].target || *b.target == *g.branches[0].target))
      throw std::invalid_argument("multigerm branches must share the target ring");
  }
}

struct MultiPoint {
  std::vector<int> branches;              // branch index per slot
  std::vector<std::vector<Rat>> coords;   // per slot, coordinates in that branch's source
};

struct MultiPointSet {
  std::vector<MultiPoint> points;
  bool complete = true;
};

inline bool operator==(const MultiPoint& a, const MultiPoint& b) {
  return a.branches == b.branches && a.coords == b.coords;
}

inline bool multipoint_less(const MultiPoint& a, const MultiPoint& b) {
  if (a.branches != b.branches) return a.branches < b.branches;
  return a.coords < b.coords;
}

// All D^k points of the multigerm at fixed rational parameter values, over
// every ordered combination of branches, labeled by the branch tuple. The
// S_k action permutes slots. Branch sources must be 1-dimensional (after
// parameters) whenever a branch repeats inside a tuple.
inline MultiPointSet multigerm_dk_points(const MultiGerm& g, size_t k,
                                         const std::map<std::string, Rat>& params) {
  validate(g);
  size_t r = g.branches.size();
  MultiPointSet out;
  std::vector<int> tuple(k, 0);
  auto param_subst = [&](const MapGerm& b, const Polynomial& p, const RingPtr& to,
                         const std::vector<std::optional<Polynomial>>& var_images) {
    std::vector<std::optional<Polynomial>> images = var_images;
    for (size_t v = 0; v < b.source->nvars(); ++v) {
      auto it = params.find(b.source->var_name(v));
      if (it != params.end()) images[v] = Polynomial::constant(to, it->second);
    }
    return substitute(p, images, to);
  };
  while (true) {
    // Build the system for this ordered branch tuple.
    std::vector<std::string> vars;
    std::vector<std::vector<std::string>> slot_vars(k);
    for (size_t a = 0; a < k; ++a) {
      const MapGerm& b = g.branches[static_cast<size_t>(tuple[a])];
      for (size_t v = 0; v < b.source->nvars(); ++v) {
        const std::string& name = b.source->var_name(v);
        if (params.count(name)) continue;
        std::string slot_name = name + "_s" + std::to_string(a + 1);
        slot_vars[a].push_back(slot_name);
        vars.push_back(slot_name);
      }
    }
    RingPtr R = make_ring(vars, MonomialOrder::grevlex());
    std::vector<Polynomial> gens;
    // group slots by branch
    std::map<int, std::vector<size_t>> groups;
    for (size_t a = 0; a < k; ++a) groups[tuple[a]].push_back(a);
    auto slot_images = [&](size_t a) {
      const MapGerm& b = g.branches[static_cast<size_t>(tuple[a])];
      std::vector<std::optional<Polynomial>> images(b.source->nvars());
      size_t next = 0;
      for (size_t v = 0; v < b.source->nvars(); ++v) {
        if (params.count(b.source->var_name(v))) continue;
        images[v] = Polynomial::variable(R, slot_vars[a][next++]);
      }
      return images;
    };
    for (auto& [bi, slots] : groups) {
      const MapGerm& b = g.branches[static_cast<size_t>(bi)];
      if (slots.size() >= 2) {
        if (slot_vars[slots[0]].size() != 1) {
          throw std::invalid_argument(
              "multigerm_dk_points: repeated branches need 1-dimensional sources");
        }
        std::vector<Polynomial> nodes;
        for (size_t a : slots) nodes.push_back(Polynomial::variable(R, slot_vars[a][0]));
        for (const auto& comp : b.components) {
          std::vector<Polynomial> values;
          for (size_t a : slots) values.push_back(param_subst(b, comp, R, slot_images(a)));
          for (size_t l = 1; l < slots.size(); ++l) {
            Polynomial c = lagrange_coefficient(R, nodes, values, l);
            if (!c.is_zero_poly()) gens.push_back(std::move(c));
          }
        }
      }
    }
    // cross-branch equalities: every slot against slot 0
    for (size_t a = 1; a < k; ++a) {
      const MapGerm& b0 = g.branches[static_cast<size_t>(tuple[0])];
      const MapGerm& ba = g.branches[static_cast<size_t>(tuple[a])];
      for (size_t i = 0; i < b0.components.size(); ++i) {
        Polynomial d = param_subst(b0, b0.components[i], R, slot_images(0)) -
                       param_subst(ba, ba.components[i], R, slot_images(a));
        if (!d.is_zero_poly()) gens.push_back(std::move(d));
      }
    }
    Ideal sys(R, std::move(gens));
    if (!sys.is_unit()) {
      RationalPointSet pts = rational_points(sys);
      if (!pts.complete) out.complete = false;
      for (const auto& p : pts.points) {
        MultiPoint mp;
        mp.branches.assign(tuple.begin(), tuple.end());
        size_t off = 0;
        for (size_t a = 0; a < k; ++a) {
          std::vector<Rat> c(p.coords.begin() + static_cast<long>(off),
                             p.coords.begin() + static_cast<long>(off + slot_vars[a].size()));
          mp.coords.push_back(std::move(c));
          off += slot_vars[a].size();
        }
        out.points.push_back(std::move(mp));
      }
    }
    // next tuple
    size_t a = 0;
    while (a < k) {
      if (++tuple[a] < static_cast<int>(r)) break;
      tuple[a] = 0;
      ++a;
    }
    if (a == k) break;
  }
  std::sort(out.points.begin(), out.points.end(), multipoint_less);
  return out;
}

}  // namespace germ
