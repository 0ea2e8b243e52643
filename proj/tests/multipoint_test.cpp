// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "germ/multipoint.hpp"

using namespace germ;

namespace {
Polynomial P(const RingPtr& r, const std::string& s) { return parse_poly(r, s); }
Ideal I(const RingPtr& r, const std::vector<std::string>& gens) {
  return Ideal(r, parse_polys(r, gens));
}

MapGerm umbrella() {
  MapGerm f;
  f.source = make_ring({"x", "y"});
  f.target = make_ring({"X", "Y", "Z"});
  f.components = parse_polys(f.source, {"x", "y^2", "x*y"});
  return f;
}

MapGerm sharland_germ() {
  MapGerm f;
  f.source = make_ring({"x", "y", "z"});
  f.target = make_ring({"X", "U", "V", "W"});
  f.components = parse_polys(f.source, {"x", "y^2+x*z+x^2*y", "y*z", "z^2+y^3"});
  return f;
}

MapGerm h2_germ() {  // (x, y^3, x*y + y^5)
  MapGerm f;
  f.source = make_ring({"x", "y"});
  f.target = make_ring({"X", "Y", "Z"});
  f.components = parse_polys(f.source, {"x", "y^3", "x*y+y^5"});
  f.corank1_var = "y";
  return f;
}
}  // namespace

TEST_CASE("double points of the cross-cap") {
  auto d = double_point_ideal(umbrella());
  auto expected = I(d.ring, {"x_1", "x_2", "y_1+y_2"});
  CHECK(same_zero_set(d.ideal, expected));
  CHECK(krull_dim(d.ideal) == 1);  // n-1
  // S_2 stability: the swap maps the ideal to itself
  for (const auto& g : d.ideal.gens())
    CHECK(contains(d.ideal, swap_copies(g, d, umbrella())));
}

TEST_CASE("double points of an embedding are empty") {
  MapGerm f;
  f.source = make_ring({"x"});
  f.target = make_ring({"X", "Y"});
  f.components = parse_polys(f.source, {"x", "0"});
  auto d = double_point_ideal(f);
  CHECK(d.ideal.is_unit());
}

TEST_CASE("double points of the corank 2 3-to-4 germ have dimension 2") {
  auto d = double_point_ideal(sharland_germ());
  CHECK(krull_dim(d.ideal) == 2);
  for (const auto& g : d.ideal.gens())
    CHECK(contains(d.ideal, swap_copies(g, d, sharland_germ())));
}

TEST_CASE("restriction to the diagonal matches the ramification ideal") {
  for (auto f : {umbrella(), sharland_germ()}) {
    auto d = double_point_ideal(f);
    // pull the ramification ideal to copy 1
    Ideal R = ramification_ideal(f);
    std::vector<std::optional<Polynomial>> im(f.source->nvars());
    for (size_t v = 0; v < f.source->nvars(); ++v)
      im[v] = Polynomial::variable(d.ring, static_cast<size_t>(d.copy1[v]));
    std::vector<Polynomial> rg;
    for (const auto& g : R.gens()) rg.push_back(substitute(g, im, d.ring));
    Ideal ram_diag = ideal_sum(Ideal(d.ring, rg), d.diagonal);
    Ideal i2_diag = ideal_sum(d.ideal, d.diagonal);
    CHECK(same_zero_set(i2_diag, ram_diag));
  }
}

TEST_CASE("corank-1 D^2 of the H2 germ") {
  auto dk = corank1_dk_ideal(h2_germ(), 2);
  auto expected = I(dk.ring, {"y_1^2+y_1*y_2+y_2^2",
                              "x+y_1^4+y_1^3*y_2+y_1^2*y_2^2+y_1*y_2^3+y_2^4"});
  CHECK(ideal_equal(dk.ideal, expected));
}

TEST_CASE("corank-1 D^3 of the H2 germ: symmetric, colength 6") {
  auto dk = corank1_dk_ideal(h2_germ(), 3);
  // S_3 stability under permuting the slots
  auto act = [&](const Polynomial& p, const std::vector<size_t>& perm) {
    std::vector<std::optional<Polynomial>> im(dk.ring->nvars());
    for (size_t v = 0; v < dk.ring->nvars(); ++v) im[v] = Polynomial::variable(dk.ring, v);
    for (size_t j = 0; j < 3; ++j)
      im[dk.slot_vars[j]] = Polynomial::variable(dk.ring, dk.slot_vars[perm[j]]);
    return substitute(p, im, dk.ring);
  };
  for (const auto& perm : std::vector<std::vector<size_t>>{{1, 0, 2}, {1, 2, 0}})
    for (const auto& g : dk.ideal.gens()) CHECK(contains(dk.ideal, act(g, perm)));
  CHECK(local_colength(dk.ideal).value == 6);
}

TEST_CASE("corank-1 D^2 of an immersion is empty") {
  MapGerm f;
  f.source = make_ring({"x", "y"});
  f.target = make_ring({"X", "Y", "Z"});
  f.components = parse_polys(f.source, {"x", "y", "0"});
  f.corank1_var = "y";
  CHECK(corank1_dk_ideal(f, 2).ideal.is_unit());
}

TEST_CASE("triple locus of the 3-to-4 germ via pullback") {
  auto f = sharland_germ();
  std::vector<Polynomial> basis = parse_polys(f.source, {"1", "y", "z"});
  Ideal d31 = source_triple_locus(f, basis);
  auto expected = I(f.source, {"x^4+x^2*y+y^2+x*z", "y*z", "x^3*z+z^2"});
  CHECK(ideal_equal(d31, expected));
  Ideal m3 = target_multiple_locus(f, 3, basis);
  CHECK(ideal_equal(m3, I(f.target, {"X^4+U", "V", "X^2*U+W"})));
  // image equation: k=1
  MapGerm cusp;
  cusp.source = make_ring({"t"});
  cusp.target = make_ring({"X", "Y"});
  cusp.components = parse_polys(cusp.source, {"t^2", "t^3"});
  Ideal img = target_multiple_locus(cusp, 1, parse_polys(cusp.source, {"1", "t"}));
  CHECK(ideal_equal(img, I(cusp.target, {"Y^2-X^3"})));
}

TEST_CASE("sigma11 of the cross-cap and of immersions is empty") {
  CHECK(sigma11_ideal(umbrella()).is_unit());
  MapGerm imm;
  imm.source = make_ring({"x", "y"});
  imm.target = make_ring({"X", "Y", "Z"});
  imm.components = parse_polys(imm.source, {"x", "y", "0"});
  CHECK(sigma11_ideal(imm).is_unit());
}

TEST_CASE("reidemeister I double points") {
  MultiGerm g;
  MapGerm b;
  b.source = make_ring({"x", "t"});
  b.target = make_ring({"U", "V"});
  b.components = parse_polys(b.source, {"x^2", "x^3-t*x"});
  g.branches = {b};
  auto pts = multigerm_dk_points(g, 2, {{"t", Rat(1)}});
  CHECK(pts.complete);
  REQUIRE(pts.points.size() == 2);
  CHECK(pts.points[0].coords[0][0] == -pts.points[0].coords[1][0]);
  // D^3 is empty
  CHECK(multigerm_dk_points(g, 3, {{"t", Rat(1)}}).points.empty());
}

TEST_CASE("reidemeister II double points at t=2") {
  MultiGerm g;
  MapGerm bx, by;
  bx.source = make_ring({"x", "t"});
  bx.target = make_ring({"U", "V"});
  bx.components = parse_polys(bx.source, {"x", "x^2-t"});
  by.source = make_ring({"y"});
  by.target = bx.target;
  by.components = parse_polys(by.source, {"y", "-y^2"});
  g.branches = {bx, by};
  auto pts = multigerm_dk_points(g, 2, {{"t", Rat(2)}});
  CHECK(pts.complete);
  CHECK(pts.points.size() == 4);  // two S_2 orbits
  int cross = 0;
  for (const auto& p : pts.points)
    if (p.branches[0] != p.branches[1]) ++cross;
  CHECK(cross == 4);
  // collapsed at t=0: one pair
  auto pts0 = multigerm_dk_points(g, 2, {{"t", Rat(0)}});
  CHECK(pts0.points.size() == 2);
}

TEST_CASE("reidemeister III points") {
  MultiGerm g;
  MapGerm bx, by, bz;
  bx.source = make_ring({"x"});
  bx.target = make_ring({"U", "V"});
  bx.components = parse_polys(bx.source, {"x", "x"});
  by.source = make_ring({"y", "t"});
  by.target = bx.target;
  by.components = parse_polys(by.source, {"y", "t"});
  bz.source = make_ring({"z"});
  bz.target = bx.target;
  bz.components = parse_polys(bz.source, {"z", "-z"});
  g.branches = {bx, by, bz};
  auto d2 = multigerm_dk_points(g, 2, {{"t", Rat(1)}});
  CHECK(d2.points.size() == 6);  // three free S_2 orbits
  auto d3t = multigerm_dk_points(g, 3, {{"t", Rat(1)}});
  CHECK(d3t.points.empty());
  auto d30 = multigerm_dk_points(g, 3, {{"t", Rat(0)}});
  CHECK(d30.points.size() == 6);  // one faithful S_3 orbit over the origin
  for (const auto& p : d30.points) {
    std::set<int> branches(p.branches.begin(), p.branches.end());
    CHECK(branches.size() == 3);
    for (const auto& c : p.coords) CHECK(c[0] == 0);
  }
}
