// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "germ/modfit.hpp"

using namespace germ;

namespace {
Polynomial P(const RingPtr& r, const std::string& s) { return parse_poly(r, s); }
Ideal I(const RingPtr& r, const std::vector<std::string>& gens) {
  return Ideal(r, parse_polys(r, gens));
}
}  // namespace

TEST_CASE("fitting ideal conventions") {
  auto r = make_ring({"x", "y"});
  PolyMatrix pm(r, 2, 2);
  pm.at(0, 0) = P(r, "x");
  pm.at(1, 1) = P(r, "y");
  PresentedModule M{pm, {}};
  CHECK(fitting_ideal(M, 2).is_unit());   // k >= generators
  CHECK(ideal_equal(fitting_ideal(M, 0), I(r, {"x*y"})));
  CHECK(ideal_equal(fitting_ideal(M, 1), I(r, {"x", "y"})));
  // Fitting chain
  for (size_t k = 0; k + 1 <= 2; ++k) {
    Ideal lo = fitting_ideal(M, k), hi = fitting_ideal(M, k + 1);
    for (const auto& g : lo.gens()) CHECK(contains(hi, g));
  }
}

TEST_CASE("module local colength") {
  auto r = make_ring({"x"});
  PolyMatrix one(r, 1, 1);
  one.at(0, 0) = P(r, "x^2");
  CHECK(module_local_colength({one, {}}).value == 2);
  PolyMatrix zero(r, 1, 1);
  CHECK_FALSE(module_local_colength({zero, {}}).finite);
}

TEST_CASE("koszul tor: hand-checked small cases") {
  auto r = make_ring({"x", "t"});
  auto M = cyclic_module(I(r, {"x"}));
  auto tor = koszul_tor(M, {P(r, "t")});
  REQUIRE(tor.dims.size() == 2);
  CHECK(tor.dims[0].value == 1);
  CHECK(tor.dims[1].value == 0);

  auto r1 = make_ring({"t"});
  auto M1 = cyclic_module(I(r1, {"t"}));
  auto tor1 = koszul_tor(M1, {P(r1, "t")});
  CHECK(tor1.dims[0].value == 1);
  CHECK(tor1.dims[1].value == 1);

  // non-regular ambient sequence is rejected
  auto r2 = make_ring({"x", "y"});
  CHECK_THROWS(koszul_tor(cyclic_module(I(r2, {"x"})), {P(r2, "x*y"), P(r2, "x")}));
}

TEST_CASE("pushforward of the cusp") {
  auto src = make_ring({"t"});
  auto tgt = make_ring({"X", "Y"});
  auto pf = pushforward_presentation(src, tgt, {P(src, "t^2"), P(src, "t^3")},
                                     {P(src, "1"), P(src, "t")});
  CHECK(pf.multiplicity == 2);
  CHECK(pf.square);
  CHECK(pf.module.generators() == 2);
  auto f0 = fitting_ideal(pf.module, 0);
  CHECK(ideal_equal(f0, I(tgt, {"Y^2 - X^3"})));
  // basis that fails to generate
  CHECK_THROWS(pushforward_presentation(src, tgt, {P(src, "t^2"), P(src, "t^3")},
                                        {P(src, "1"), P(src, "t^2")}));
}

TEST_CASE("pushforward presentation of the 3-to-4 corank 2 germ") {
  auto src = make_ring({"x", "y", "z"}, MonomialOrder::grevlex());
  auto tgt = make_ring({"X", "U", "V", "W"}, MonomialOrder::grevlex());
  std::vector<Polynomial> f = {P(src, "x"), P(src, "y^2+x*z+x^2*y"), P(src, "y*z"),
                               P(src, "z^2+y^3")};
  auto pf = pushforward_presentation(src, tgt, f, {P(src, "1"), P(src, "y"), P(src, "z")});
  CHECK(pf.multiplicity == 3);
  CHECK(pf.module.generators() == 3);
  auto fitt2 = fitting_ideal(pf.module, 2);
  auto expected2 = I(tgt, {"X^4+U", "V", "X^2*U+W"});
  CHECK(ideal_equal(fitt2, expected2));
  // pullback f^* Fitt_2 matches the displayed triple-point ideal
  std::map<std::string, Polynomial> sub{
      {"X", f[0]}, {"U", f[1]}, {"V", f[2]}, {"W", f[3]}};
  std::vector<Polynomial> pulled;
  for (const auto& g : fitt2.gens()) pulled.push_back(substitute(g, sub));
  Ideal pullback(src, pulled);
  auto expected_pullback = I(src, {"x^4+x^2*y+y^2+x*z", "y*z", "x^3*z+z^2"});
  CHECK(ideal_equal(pullback, expected_pullback));
}
