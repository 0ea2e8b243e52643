// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "germ/groebner.hpp"

using namespace germ;

namespace {

Polynomial P(const RingPtr& r, const std::string& s) { return parse_poly(r, s); }

Ideal I(const RingPtr& r, const std::vector<std::string>& gens) {
  return Ideal(r, parse_polys(r, gens));
}

std::vector<std::string> basis_strings(const Ideal& id) {
  std::vector<std::string> out;
  for (const auto& b : id.groebner()) out.push_back(print_poly(b));
  return out;
}

Polynomial random_poly(const RingPtr& ring, std::mt19937& rng, int max_terms = 4, int max_deg = 3,
                       int max_coeff = 5) {
  std::uniform_int_distribution<int> nt(1, max_terms);
  std::uniform_int_distribution<int> dg(0, max_deg);
  std::uniform_int_distribution<int> cf(-max_coeff, max_coeff);
  std::vector<Term> ts;
  int n = nt(rng);
  for (int i = 0; i < n; ++i) {
    Expo e(ring->nvars());
    for (size_t i = 0; i < e.size(); ++i) e[i] = static_cast<uint16_t>(dg(rng));
    int c = cf(rng);
    if (c == 0) c = 1;
    ts.push_back({e, Rat(c)});
  }
  return Polynomial(ring, std::move(ts));
}

}  // namespace

TEST_CASE("reduced basis: hand-checked lex examples") {
  auto r = make_ring({"x", "y"}, MonomialOrder::lex());
  auto id = I(r, {"x^2+y", "y^2"});
  auto b = basis_strings(id);
  REQUIRE(b.size() == 2);
  CHECK(b[0] == "y^2");
  CHECK(b[1] == "x^2 + y");

  auto unit = I(r, {"3"});
  auto ub = basis_strings(unit);
  REQUIRE(ub.size() == 1);
  CHECK(ub[0] == "1");
  CHECK(unit.is_unit());

  // Double points of the first Reidemeister move, as an unfolding ideal.
  auto r3 = make_ring({"x1", "x2", "t"}, MonomialOrder::lex());
  auto d2 = I(r3, {"x1+x2", "x1^2+x1*x2+x2^2-t"});
  auto db = basis_strings(d2);
  REQUIRE(db.size() == 2);
  CHECK(db[0] == "x2^2 - t");
  CHECK(db[1] == "x1 + x2");
}

TEST_CASE("normal form and membership") {
  auto r = make_ring({"x", "y"}, MonomialOrder::lex());
  auto id = I(r, {"x^2+y", "y^2"});
  CHECK(normal_form(P(r, "x^2*y"), id).is_zero_poly());
  CHECK(normal_form(P(r, "x"), I(r, {"y"})) == P(r, "x"));
  // membership soundness: generators reduce to zero
  for (const auto& g : id.gens()) CHECK(normal_form(g, id).is_zero_poly());
  // rational coefficients survive exactly
  CHECK(normal_form(P(r, "1/3*x^2 + 1/3*y + x"), id) == P(r, "x"));
}

TEST_CASE("zero ideal and empty input") {
  auto r = make_ring({"x"});
  auto z = Ideal::zero(r);
  CHECK(z.groebner().empty());
  CHECK(normal_form(P(r, "x"), z) == P(r, "x"));
}

TEST_CASE("buchberger certificate on random ideals") {
  auto r = make_ring({"x", "y", "z"}, MonomialOrder::grevlex());
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Polynomial> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(random_poly(r, rng));
    Ideal id(r, gens);
    id.groebner();
    CHECK(buchberger_certificate(id));
    for (const auto& g : id.gens()) CHECK(normal_form(g, id).is_zero_poly());
  }
}

TEST_CASE("determinism: identical bases across repeated runs") {
  auto r = make_ring({"x", "y", "z"}, MonomialOrder::grevlex());
  std::vector<std::string> gens = {"x^2*y - z^3 + 1", "x*z - y^2", "y^3 - 2*x + z"};
  auto b1 = basis_strings(I(r, gens));
  for (int i = 0; i < 3; ++i) CHECK(basis_strings(I(r, gens)) == b1);
}

TEST_CASE("modular prefilter output is bit-identical") {
  auto r = make_ring({"x", "y", "z"}, MonomialOrder::grevlex());
  std::vector<std::vector<std::string>> cases = {
      {"x^2*y - z^3 + 1", "x*z - y^2", "y^3 - 2*x + z"},
      {"x^2 + y^2 + z^2 - 1", "x*y - z", "x - y + z^2"},
      {"x^3 - 2*x*y", "x^2*y - 2*y^2 + x"},
  };
  for (const auto& gens : cases) {
    GroebnerResult off = groebner_basis_full(r, parse_polys(r, gens), GBOptions{false, 0});
    GroebnerResult on = groebner_basis_full(r, parse_polys(r, gens), GBOptions{true, 0});
    REQUIRE(off.basis.size() == on.basis.size());
    for (size_t i = 0; i < off.basis.size(); ++i) CHECK(off.basis[i] == on.basis[i]);
  }
}

TEST_CASE("uniqueness under generator shuffling") {
  auto r = make_ring({"x", "y", "z"}, MonomialOrder::grevlex());
  std::vector<std::string> gens = {"x^2 - y", "y^2 - z", "x*y*z - 1"};
  auto b1 = basis_strings(I(r, gens));
  auto b2 = basis_strings(I(r, {"y^2 - z", "x*y*z - 1", "x^2 - y"}));
  CHECK(b1 == b2);
}

TEST_CASE("cyclic-3 style stress") {
  auto r = make_ring({"x", "y", "z"}, MonomialOrder::grevlex());
  auto id = I(r, {"x+y+z", "x*y+y*z+z*x", "x*y*z-1"});
  auto b = id.groebner();
  CHECK(b.size() == 3);
  CHECK(buchberger_certificate(id));
}
