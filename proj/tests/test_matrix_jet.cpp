#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ncdiff/errors.hpp"
#include "ncdiff/matrix_jet.hpp"
#include "oracles.hpp"

using namespace ncdiff;

static_assert(DifferentialRing<MatrixJet>);
static_assert(BiDifferentialRing<MatrixJet>);

namespace {

RationalMatrix m2(int a, int b, int c, int d) { return RationalMatrix{{a, b}, {c, d}}; }

}  // namespace

TEST_CASE("rational matrix inverse") {
  const auto a = m2(2, 1, 1, 1);
  CHECK(a * a.inverse() == RationalMatrix::identity(2));
  CHECK_THROWS_AS(m2(1, 2, 2, 4).inverse(), SingularConstantTerm);
}

TEST_CASE("products of jets truncate to the common order") {
  const auto a = MatrixJet::scalar_series({1, 1}, 5);
  const auto b = MatrixJet::scalar_series({1, -1}, 3);
  const auto p = a * b;
  CHECK(p.x_order() == 3);
  CHECK(p.coefficient(0) == RationalMatrix{{1}});
  CHECK(p.coefficient(1) == RationalMatrix{{0}});
  CHECK(p.coefficient(2) == RationalMatrix{{-1}});
  CHECK_THROWS_AS(p.coefficient(4), PrecisionExhausted);
}

TEST_CASE("derive lowers the valid order and fails below zero") {
  auto a = MatrixJet::scalar_series({0, 0, 1}, 2);
  a = derive(a);
  CHECK(a.x_order() == 1);
  CHECK(a.coefficient(1) == RationalMatrix{{2}});
  a = derive(a);
  CHECK(a.x_order() == 0);
  CHECK(a.coefficient(0) == RationalMatrix{{2}});
}

TEST_CASE("derive past the budget throws") {
  auto a = MatrixJet::scalar_series({1, 2, 3}, 1);
  a = derive(a);
  CHECK(a.x_order() == 0);
  CHECK_THROWS_AS(derive(a), PrecisionExhausted);
  // Exact constants differentiate freely.
  auto c = MatrixJet::identity(2);
  for (int i = 0; i < 5; ++i) c = derive(c);
  CHECK(c.is_zero());
}

TEST_CASE("inverse matches the geometric series oracle") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    const int dim = 1 + trial % 3;
    const auto a = oracle::random_invertible_jet(rng, dim, 4, 10);
    const auto inv = invert(a);
    CHECK(agrees(inv, oracle::geometric_inverse(a, 10)));
    CHECK(agrees(a * inv, MatrixJet::identity(dim)));
    CHECK(agrees(inv * a, MatrixJet::identity(dim)));
  }
}

TEST_CASE("inverse errors") {
  CHECK_THROWS_AS(invert(MatrixJet::constant(m2(1, 1, 1, 1), 4)), SingularConstantTerm);
  // x-dependent exact jet: its inverse has infinitely many terms.
  const auto exact_poly = MatrixJet::series({RationalMatrix{{1}}, RationalMatrix{{1}}}, kExactOrder);
  CHECK_THROWS_AS(invert(exact_poly), PrecisionExhausted);
  CHECK(agrees(invert(MatrixJet::constant(RationalMatrix{{2}})), MatrixJet::constant(RationalMatrix{{Scalar(1, 2)}})));
}

TEST_CASE("exp series agrees with the ODE oracle") {
  const auto a = m2(0, 1, -1, 0);
  const auto e = exp_series(a, 12, 16);
  CHECK(agrees(e, oracle::exp_by_ode(a, 12, 16)));
  // D exp(Ax) = A exp(Ax) below the truncation degree.
  CHECK(agrees(derive(e).truncate(11), (MatrixJet::constant(a) * e).truncate(11)));
  CHECK(agrees(exp_series(Scalar(3, 2), 8, 8), oracle::exp_by_ode(RationalMatrix{{Scalar(3, 2)}}, 8, 8)));
}

TEST_CASE("jet Leibniz rule and involution") {
  std::mt19937 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_jet(rng, 2, 5, 9);
    const auto b = oracle::random_jet(rng, 2, 5, 7);
    CHECK(agrees(derive(a * b), derive(a) * b + a * derive(b)));
    CHECK(agrees(conjugate(conjugate(a)), a));
    CHECK(agrees(conjugate(a * b), conjugate(b) * conjugate(a)));
    CHECK(agrees(conjugate(derive(a)), -derive(conjugate(a))));
  }
}

TEST_CASE("one-dimensional jets commute") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = oracle::random_jet(rng, 1, 4, 8);
    const auto b = oracle::random_jet(rng, 1, 4, 8);
    CHECK(agrees(a * b, b * a));
  }
}

TEST_CASE("bi-jets") {
  std::vector<std::vector<RationalMatrix>> levels{
      {RationalMatrix{{1}}, RationalMatrix{{2}}, RationalMatrix{{3}}},
      {RationalMatrix{{4}}, RationalMatrix{{5}}},
      {RationalMatrix{{6}}}};
  const auto a = MatrixJet::bivariate(levels, {3, 2, 1});
  CHECK(a.is_bivariate());
  CHECK(a.t_order() == 2);
  const auto dt = derive_t(a);
  CHECK(dt.t_order() == 1);
  CHECK(dt.coefficient(0, 1) == RationalMatrix{{5}});
  CHECK(dt.coefficient(1, 0) == RationalMatrix{{12}});
  CHECK(agrees(derive(derive_t(a)), derive_t(derive(a))));
  CHECK_THROWS_AS(derive_t(MatrixJet::identity(1)), UnsupportedRealization);
  CHECK_THROWS_AS(a + MatrixJet::identity(1), RealizationMismatch);
  CHECK_THROWS_AS(MatrixJet::identity(2) + MatrixJet::identity(1), RealizationMismatch);
  const auto lifted = MatrixJet::scalar_series({1, 1}, 4).lift_t(3);
  CHECK(lifted.t_order() == 3);
  CHECK(derive_t(lifted).is_zero());
}

TEST_CASE("staircase normalization keeps orders non-increasing") {
  std::vector<std::vector<RationalMatrix>> levels{{RationalMatrix{{1}}}, {RationalMatrix{{1}}}};
  const auto a = MatrixJet::bivariate(levels, {2, 5});
  CHECK(a.x_orders() == std::vector<int>{2, 2});
}

TEST_CASE("small worked cases") {
  CHECK(agrees(MatrixJet::scalar_series({1, 2, 3}, 2) + MatrixJet::scalar_series({1}, 2),
               MatrixJet::scalar_series({2, 2, 3}, 2)));
  const auto d = derive(MatrixJet::scalar_series({5, 7, 11}, 2));
  CHECK(d.x_order() == 1);
  CHECK(agrees(d, MatrixJet::scalar_series({7, 22}, 1)));
  const RationalMatrix a{{1, 1}, {0, 1}};
  const RationalMatrix b{{1, 0}, {1, 1}};
  CHECK(!agrees(MatrixJet::constant(a) * MatrixJet::constant(b), MatrixJet::constant(b) * MatrixJet::constant(a)));
  CHECK(agrees(invert(MatrixJet::identity(2)), MatrixJet::identity(2)));
  // (e + xA)^-1 = e - xA + x^2 A^2 - ...
  const auto lin = MatrixJet::series({RationalMatrix::identity(2), a}, 6);
  std::vector<RationalMatrix> want;
  RationalMatrix p = RationalMatrix::identity(2);
  for (int k = 0; k <= 6; ++k) {
    want.push_back(k % 2 == 0 ? p : Scalar(-1) * p);
    p = p * a;
  }
  CHECK(agrees(invert(lin), MatrixJet::series(want, 6)));
}
