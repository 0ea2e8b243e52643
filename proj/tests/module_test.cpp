// Copyright (c) 2026 the germ authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "germ/module.hpp"

using namespace germ;

namespace {
Polynomial P(const RingPtr& r, const std::string& s) { return parse_poly(r, s); }

bool matrix_times_cols_is_zero(const PolyMatrix& M, const PolyMatrix& S) {
  for (size_t j = 0; j < S.cols(); ++j)
    for (size_t i = 0; i < M.rows(); ++i) {
      Polynomial acc = Polynomial::zero(M.ring());
      for (size_t k = 0; k < M.cols(); ++k) acc = acc + M.at(i, k) * S.at(k, j);
      if (!acc.is_zero_poly()) return false;
    }
  return true;
}
}  // namespace

TEST_CASE("syzygies of a 1x2 row") {
  auto r = make_ring({"x", "y"});
  PolyMatrix M(r, 1, 2);
  M.at(0, 0) = P(r, "y");
  M.at(0, 1) = P(r, "x");
  PolyMatrix S = syzygies(M);
  CHECK(matrix_times_cols_is_zero(M, S));
  // kernel generated by (x, -y) up to scalar
  REQUIRE(S.cols() == 1);
  CHECK(monic(S.at(0, 0)) == P(r, "x"));
  CHECK(monic(S.at(1, 0)) == P(r, "y"));
  CHECK(S.at(0, 0).lead_coeff() * S.at(1, 0).lead_coeff() < 0);
}

TEST_CASE("syzygies of identity are zero") {
  auto r = make_ring({"x", "y"});
  PolyMatrix I2 = PolyMatrix::identity(r, 2);
  PolyMatrix S = syzygies(I2);
  bool all_zero = true;
  for (size_t j = 0; j < S.cols(); ++j)
    for (size_t i = 0; i < S.rows(); ++i)
      if (!S.at(i, j).is_zero_poly()) all_zero = false;
  CHECK(all_zero);
}

TEST_CASE("module groebner of koszul columns") {
  auto r = make_ring({"x", "y"});
  PolyMatrix M(r, 1, 2);
  M.at(0, 0) = P(r, "x");
  M.at(0, 1) = P(r, "y");
  ModuleGB gb = module_groebner(M);
  auto b = gb.basis();
  REQUIRE(b.size() == 2);
  CHECK(b[0][0] == P(r, "y"));
  CHECK(b[1][0] == P(r, "x"));
  CHECK(gb.contains({P(r, "x^2+x*y")}));
  CHECK_FALSE(gb.contains({P(r, "1")}));
}

TEST_CASE("single element normalizes to monic") {
  auto r = make_ring({"x"});
  ModuleGB gb(r, 1, {{P(r, "3*x^2")}});
  auto b = gb.basis();
  REQUIRE(b.size() == 1);
  CHECK(b[0][0] == P(r, "x^2"));
}

TEST_CASE("lift through a matrix") {
  auto r = make_ring({"x", "y"});
  PolyMatrix M(r, 2, 2);
  M.at(0, 0) = P(r, "x");
  M.at(0, 1) = P(r, "y");
  M.at(1, 0) = P(r, "y");
  M.at(1, 1) = P(r, "x");
  VecPoly v = {P(r, "x^2+y^2"), P(r, "2*x*y")};  // = M * (x, y)
  auto q = lift_through(M, v);
  REQUIRE(q.has_value());
  // verify M*q == v
  for (size_t i = 0; i < 2; ++i) {
    Polynomial acc = Polynomial::zero(r);
    for (size_t k = 0; k < 2; ++k) acc = acc + M.at(i, k) * (*q)[k];
    CHECK(acc == v[i]);
  }
  CHECK_FALSE(lift_through(M, {P(r, "1"), P(r, "0")}).has_value());
}

TEST_CASE("minors and determinant") {
  auto r = make_ring({"x", "y"});
  PolyMatrix I2 = PolyMatrix::identity(r, 2);
  Ideal m2 = minors(I2, 2);
  CHECK(m2.is_unit());
  PolyMatrix A(r, 2, 2);
  A.at(0, 0) = P(r, "x");
  A.at(0, 1) = P(r, "y");
  A.at(1, 0) = P(r, "y");
  A.at(1, 1) = P(r, "x");
  CHECK(determinant(A) == P(r, "x^2-y^2"));
  CHECK_THROWS(minors(A, 3));
  // concat shapes
  PolyMatrix H = matrix_concat(I2, I2, ConcatAxis::Horizontal);
  CHECK(H.rows() == 2);
  CHECK(H.cols() == 4);
  PolyMatrix V = matrix_concat(A, PolyMatrix(r, 1, 2), ConcatAxis::Vertical);
  CHECK(V.rows() == 3);
  CHECK(V.cols() == 2);
}

TEST_CASE("module groebner rank mismatch") {
  auto r = make_ring({"x"});
  CHECK_THROWS(ModuleGB(r, 2, {{P(r, "x")}}));
}
