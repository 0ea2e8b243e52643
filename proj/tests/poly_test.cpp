// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "germ/io.hpp"
#include "germ/polynomial.hpp"

using namespace germ;

namespace {

RingPtr xyz() { return make_ring({"x", "y", "z"}, MonomialOrder::grevlex()); }

Polynomial P(const RingPtr& r, const std::string& s) { return parse_poly(r, s); }

// Random polynomial generator for property tests.
Polynomial random_poly(const RingPtr& ring, std::mt19937& rng, int max_terms = 5,
                       int max_deg = 3, int max_coeff = 7) {
  std::uniform_int_distribution<int> nt(0, max_terms);
  std::uniform_int_distribution<int> dg(0, max_deg);
  std::uniform_int_distribution<int> cf(-max_coeff, max_coeff);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Term> ts;
  int n = nt(rng);
  for (int i = 0; i < n; ++i) {
    Expo e(ring->nvars());
    for (size_t i = 0; i < e.size(); ++i) e[i] = static_cast<uint16_t>(dg(rng));
    int c = cf(rng);
    if (c == 0) continue;
    ts.push_back({e, rat(c, den(rng))});
  }
  return Polynomial(ring, std::move(ts));
}

}  // namespace

TEST_CASE("arithmetic basics") {
  auto r = xyz();
  // (x+y)*(x-y) = x^2 - y^2
  CHECK(P(r, "(x+y)*(x-y)") == P(r, "x^2-y^2"));
  // cancellation
  CHECK(P(r, "(y^2+x*z+x^2*y) - (y^2+x*z)") == P(r, "x^2*y"));
}

TEST_CASE("difference of cubes via divided-difference identity") {
  auto r = make_ring({"x1", "x2"});
  CHECK(P(r, "(x1-x2)*(x1^2+x1*x2+x2^2)") == P(r, "x1^3-x2^3"));
}

TEST_CASE("differentiate") {
  auto r = xyz();
  CHECK(differentiate(P(r, "y^2+x*z+x^2*y"), "y") == P(r, "2*y+x^2"));
  CHECK(differentiate(P(r, "5"), "x").is_zero_poly());
  CHECK(differentiate(P(r, "z^2+y^3"), "z") == P(r, "2*z"));
  CHECK_THROWS(differentiate(P(r, "x"), "w"));
}

TEST_CASE("substitute") {
  auto src = xyz();
  auto tgt = make_ring({"X", "U", "V", "W"});
  // X composed with f0 of the 3->4 germ is x.
  auto f1 = P(src, "x");
  std::map<std::string, Polynomial> m{{"X", f1},
                                      {"U", P(src, "y^2+x*z+x^2*y")},
                                      {"V", P(src, "y*z")},
                                      {"W", P(src, "z^2+y^3")}};
  CHECK(substitute(P(tgt, "X"), m) == P(src, "x"));
  // evaluate p = x^2+y at (1,-1) -> 0
  auto p = P(xyz(), "x^2+y");
  CHECK(evaluate(p, {Rat(1), Rat(-1), Rat(0)}) == 0);
  // identity substitution
  auto q = P(src, "x^2*y - 3/2*z");
  std::map<std::string, Polynomial> id{{"x", P(src, "x")}, {"y", P(src, "y")}, {"z", P(src, "z")}};
  CHECK(substitute(q, id) == q);
  // incomplete map
  std::map<std::string, Polynomial> bad{{"X", P(src, "x")}};
  CHECK_THROWS(substitute(P(tgt, "X+U"), bad));
}

TEST_CASE("weighted degree") {
  auto r = xyz();
  // Weights (1,2,3) make the Eq-style component homogeneous of degree 4.
  auto p = P(r, "y^2+x*z+x^2*y");
  auto w123 = weighted_degree(p, {1, 2, 3});
  REQUIRE(w123.deg.has_value());
  CHECK(*w123.deg == 4);
  // (2,3,4) does not: x^2*y has degree 7 against 6 for the others.
  CHECK_FALSE(weighted_degree(p, {2, 3, 4}).deg.has_value());
  auto r2 = make_ring({"x", "y"});
  CHECK_FALSE(weighted_degree(P(r2, "x+y"), {1, 2}).deg.has_value());
  auto z = weighted_degree(Polynomial::zero(r2), {1, 2});
  CHECK(z.zero);
}

TEST_CASE("parser round trip is the identity") {
  auto r = xyz();
  std::mt19937 rng(42);
  for (int i = 0; i < 50; ++i) {
    Polynomial p = random_poly(r, rng);
    CHECK(parse_poly(r, print_poly(p)) == p);
  }
  // juxtaposition and rational literals
  CHECK(P(r, "2x^2y") == P(r, "2*x^2*y"));
  CHECK(P(r, "1/2x") == P(r, "1/2*x"));
  CHECK(P(r, "-x(y+z)") == P(r, "-x*y-x*z"));
  CHECK(print_poly(Polynomial::zero(r)) == "0");
}

TEST_CASE("ring order sanity") {
  auto lex = make_ring({"x", "y"}, MonomialOrder::lex());
  CHECK(P(lex, "x+y^5").lead_exp() == Expo{1, 0});
  auto grev = make_ring({"x", "y"}, MonomialOrder::grevlex());
  CHECK(P(grev, "x+y^5").lead_exp() == Expo{0, 5});
  auto wtd = make_ring({"x", "y"}, MonomialOrder::weighted({3, 1}));
  CHECK(P(wtd, "x+y^2").lead_exp() == Expo{1, 0});
  auto blk = make_ring({"x", "y"}, MonomialOrder::elimination_block(1));
  CHECK(P(blk, "x+y^9").lead_exp() == Expo{1, 0});
}

TEST_CASE("arith properties on random samples") {
  auto r = xyz();
  std::mt19937 rng(7);
  for (int i = 0; i < 40; ++i) {
    Polynomial a = random_poly(r, rng), b = random_poly(r, rng), c = random_poly(r, rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    // Leibniz rule
    CHECK(differentiate(a * b, 0) == differentiate(a, 0) * b + a * differentiate(b, 0));
  }
}

TEST_CASE("exact division") {
  auto r = make_ring({"y1", "y2"});
  auto num = P(r, "y1^3-y2^3");
  auto den = P(r, "y1-y2");
  CHECK(divide_exact(num, den) == P(r, "y1^2+y1*y2+y2^2"));
  CHECK_THROWS(divide_exact(P(r, "y1^2+1"), den));
}
