// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "germ/invariants.hpp"

using namespace germ;

namespace {
Polynomial P(const RingPtr& r, const std::string& s) { return parse_poly(r, s); }
Ideal I(const RingPtr& r, const std::vector<std::string>& gens) {
  return Ideal(r, parse_polys(r, gens));
}

template <class F>
Series<F> mono(int order, std::vector<std::pair<int, typename F::Elem>> terms) {
  Series<F> s(order);
  for (auto& [k, c] : terms)
    if (k < order) s.coeff(k) = c;
  return s;
}

std::vector<Polynomial> coordinate_functions(const RingPtr& r) {
  std::vector<Polynomial> out;
  for (size_t v = 0; v < r->nvars(); ++v) out.push_back(Polynomial::variable(r, v));
  return out;
}
}  // namespace

TEST_CASE("series arithmetic and division") {
  using S = Series<RatField>;
  S t = S::t_power(8, 1, Rat(1));
  S a = t * t * t;  // t^3
  CHECK(a.valuation() == 3);
  S q = divide(a, t);
  CHECK(q.valuation() == 2);
  CHECK(q.order() == 7);
  CHECK_THROWS(divide(t, a));  // not exact
  S d = a.derivative();
  CHECK(d.coeff(2) == 3);
}

TEST_CASE("delta invariant: smooth branch and node") {
  auto r = make_ring({"x", "y"});
  BranchParam<RatField> smooth;
  smooth.order = 12;
  smooth.branches.push_back(
      {{mono<RatField>(12, {{1, Rat(1)}}), Series<RatField>::zero(12)}});
  auto d = delta_invariant(smooth, coordinate_functions(r));
  CHECK(d.delta == 0);
  CHECK(milnor_from_delta(d.delta, 1) == 0);

  BranchParam<RatField> node;
  node.order = 12;
  node.branches.push_back({{mono<RatField>(12, {{1, Rat(1)}}), Series<RatField>::zero(12)}});
  node.branches.push_back({{Series<RatField>::zero(12), mono<RatField>(12, {{1, Rat(1)}})}});
  CHECK(delta_invariant(node, coordinate_functions(r)).delta == 1);
}

TEST_CASE("delta of the triple-point curve of the 3-to-4 germ is 5") {
  using F = EisensteinField;
  auto r = make_ring({"x", "y", "z"});
  auto w = F::omega();
  auto w2 = F::mul(w, w);
  BranchParam<F> bp;
  bp.order = 14;
  // gamma_1(t) = (t, 0, -t^3)
  bp.branches.push_back({{mono<F>(14, {{1, F::one()}}), Series<F>::zero(14),
                          mono<F>(14, {{3, F::from_rat(Rat(-1))}})}});
  // gamma_2(u) = (u, w u^2, 0)
  bp.branches.push_back(
      {{mono<F>(14, {{1, F::one()}}), mono<F>(14, {{2, w}}), Series<F>::zero(14)}});
  // gamma_3(v) = (v, w^2 v^2, 0)
  bp.branches.push_back(
      {{mono<F>(14, {{1, F::one()}}), mono<F>(14, {{2, w2}}), Series<F>::zero(14)}});
  // branches satisfy the triple-locus ideal
  auto d31 = I(r, {"x^4+x^2*y+y^2+x*z", "y*z", "x^3*z+z^2"});
  CHECK(branches_lie_on(bp, d31));
  auto d = delta_invariant(bp, coordinate_functions(r));
  CHECK(d.delta == 5);
  CHECK(milnor_from_delta(d.delta, 3) == 8);
}

TEST_CASE("delta of three concurrent lines is 2") {
  // the coordinate-axis model of the sigma-1-1 curve
  auto r = make_ring({"x", "y", "a", "b", "c"});
  BranchParam<RatField> bp;
  bp.order = 10;
  auto zero = Series<RatField>::zero(10);
  auto t = mono<RatField>(10, {{1, Rat(1)}});
  auto mt = mono<RatField>(10, {{1, Rat(-1)}});
  auto m3t = mono<RatField>(10, {{1, Rat(-3)}});
  bp.branches.push_back({{zero, zero, zero, t, zero}});
  bp.branches.push_back({{zero, zero, zero, zero, t}});
  bp.branches.push_back({{t, t, m3t, mt, mt}});
  auto S = I(r, {"3*y+a", "3*x+a", "a*c-3*b*c", "a*b-3*b*c", "a^2-9*b*c"});
  CHECK(branches_lie_on(bp, S));
  auto d = delta_invariant(bp, coordinate_functions(r));
  CHECK(d.delta == 2);
  CHECK(milnor_from_delta(2, 3) == 2);
}

TEST_CASE("theta lift for the node curve h = xy") {
  auto r = make_ring({"x", "y"});
  BranchParam<RatField> bp;
  bp.order = 12;
  bp.branches.push_back({{mono<RatField>(12, {{1, Rat(1)}}), Series<RatField>::zero(12)}});
  bp.branches.push_back({{Series<RatField>::zero(12), mono<RatField>(12, {{1, Rat(1)}})}});
  auto th = theta_h_lifted<RatField>(P(r, "x*y"), I(r, {"x*y"}), bp);
  CHECK(th.colength == 3);
  auto d = delta_invariant(bp, coordinate_functions(r));
  CHECK(d.delta == 1);
}

TEST_CASE("whitney umbrella contributes 1") {
  auto r = make_ring({"x", "y", "z"});
  BranchParam<RatField> bp;
  bp.order = 12;
  bp.branches.push_back({{Series<RatField>::zero(12), Series<RatField>::zero(12),
                          mono<RatField>(12, {{1, Rat(1)}})}});
  auto sigma = I(r, {"x", "y"});
  auto th = theta_h_lifted<RatField>(P(r, "x^2-y^2*z"), sigma, bp);
  auto d = delta_invariant(bp, coordinate_functions(r));
  CHECK(vd_infinity(th.colength, d.delta) == 1);
}

TEST_CASE("ordinary triple point contributes -2") {
  auto r = make_ring({"x", "y", "z"});
  BranchParam<RatField> bp;
  bp.order = 12;
  auto z12 = Series<RatField>::zero(12);
  auto t = mono<RatField>(12, {{1, Rat(1)}});
  bp.branches.push_back({{t, z12, z12}});
  bp.branches.push_back({{z12, t, z12}});
  bp.branches.push_back({{z12, z12, t}});
  auto sigma = I(r, {"x*y", "x*z", "y*z"});
  auto th = theta_h_lifted<RatField>(P(r, "x*y*z"), sigma, bp);
  auto d = delta_invariant(bp, coordinate_functions(r));
  CHECK(d.delta == 2);
  CHECK(vd_infinity(th.colength, d.delta) == -2);
}

TEST_CASE("isotype dims: free orbit pair under S2") {
  auto r = make_ring({"x1", "x2"});
  auto id = I(r, {"x1+x2", "x1^2+x1*x2+x2^2-1"});
  auto iso = isotype_dims(id, {{1, 0}}, SymmetricGroup::S2);
  CHECK(iso.trivial == 1);
  CHECK(iso.sign == 1);
}

TEST_CASE("isotype dims: fixed points carry no alternating part") {
  auto r = make_ring({"x1", "x2"});
  auto id = I(r, {"x1-x2", "x1^2"});
  auto iso = isotype_dims(id, {{1, 0}}, SymmetricGroup::S2);
  CHECK(iso.sign == 0);
  CHECK(iso.trivial == 2);
}

TEST_CASE("isotype dims: regular representation of S3 on six points") {
  auto r = make_ring({"x", "y", "z"});
  // the six orderings of (1, 2, -3)
  auto id = I(r, {"x+y+z", "x*y+x*z+y*z+7", "x*y*z+6"});
  auto iso = isotype_dims(id, {{1, 0, 2}, {1, 2, 0}}, SymmetricGroup::S3);
  CHECK(iso.trivial == 1);
  CHECK(iso.sign == 1);
  CHECK(iso.rho == 4);
  // the action must preserve the ideal
  CHECK_THROWS(isotype_dims(I(r, {"x"}), {{1, 0, 2}, {1, 2, 0}}, SymmetricGroup::S3));
}

TEST_CASE("euler and lefschetz bookkeeping") {
  CHECK(branched_cover_euler(-7, 10) == -24);
  CHECK(branched_cover_euler(5, 0) == 10);
  CHECK(branched_cover_euler(2, 2) == 2);
  CHECK(lefschetz_solve(10, 0) == 9);
  CHECK(lefschetz_solve(1, 0) == 0);
  CHECK_THROWS(lefschetz_solve(0, 0));
  CHECK(milnor_from_delta(5, 3) == 8);
}

TEST_CASE("t1 dimension") {
  auto r3 = make_ring({"x", "y", "z"});
  auto a1 = t1_dimension(I(r3, {"x^2+y^2+z^2"}));
  CHECK(a1.finite);
  CHECK(a1.value == 1);
  auto smooth = t1_dimension(I(r3, {"x"}));
  CHECK(smooth.finite);
  CHECK(smooth.value == 0);
}

TEST_CASE("mu image of a trivially unfolded immersion is zero") {
  MapGerm F;
  F.source = make_ring({"x", "u"});
  F.target = make_ring({"X", "Y", "u"});
  F.components = parse_polys(F.source, {"x", "0", "u"});
  F.unfolding_params = {"u"};
  auto mu = mu_image(F, parse_polys(F.source, {"1"}));
  CHECK(mu.value == 0);
  CHECK(mu.detail.cm_certified);
}
