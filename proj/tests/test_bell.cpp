#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <thread>

#include "ncdiff/bell.hpp"
#include "ncdiff/format.hpp"
#include "ncdiff/parser.hpp"
#include "oracles.hpp"

using namespace ncdiff;

namespace {

using Op = DiffOperator<FreeElement>;

FreeElement s() { return FreeElement::generator("s"); }

FreeElement parse(const std::string& text) {
  SessionConfig config;
  config.generators = {"s"};
  return parse_free_element(text, config);
}

}  // namespace

TEST_CASE("left Bell polynomials, first four") {
  BellTable<FreeElement> t(s());
  CHECK(t.left(0) == FreeElement::one());
  CHECK(t.left(1) == parse("s"));
  CHECK(t.left(2) == parse("s^2 + D(s)"));
  CHECK(t.left(3) == parse("s^3 + 2*D(s)*s + s*D(s) + D^2(s)"));
  CHECK(t.left(4) == parse("s^4 + 3*D(s)*s^2 + 2*s*D(s)*s + s^2*D(s) + 3*D^2(s)*s + 3*D(s)^2 + s*D^2(s) + D^3(s)"));
}

TEST_CASE("right Bell polynomials, first four") {
  BellTable<FreeElement> t(s());
  CHECK(t.right(1) == parse("s"));
  CHECK(t.right(2) == parse("s^2 - D(s)"));
  CHECK(t.right(3) == parse("s^3 - D(s)*s - 2*s*D(s) + D^2(s)"));
  CHECK(t.right(4) == parse("s^4 - D(s)*s^2 - 2*s*D(s)*s - 3*s^2*D(s) + D^2(s)*s + 3*D(s)^2 + 3*s*D^2(s) - D^3(s)"));
}

TEST_CASE("generalized Bell polynomials match the triangular closed form") {
  BellTable<FreeElement> t(s());
  for (int n = 0; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(t.gen(n, k) == oracle::gen_bell(n, k, s()));
    }
}

TEST_CASE("left Bell polynomials from a generalized row") {
  BellTable<FreeElement> t(s());
  for (int n = 0; n <= 7; ++n) CHECK(t.left(n + 1) == oracle::left_bell_from_row(n, s()));
}

TEST_CASE("generalized Bell polynomials in n, k = 1..4") {
  BellTable<FreeElement> t(s());
  const auto ds = derive(s());
  const auto d2s = derive(ds);
  const auto d3s = derive(d2s);
  const auto x = s();
  for (int n = 4; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(t.gen(n, 1) == x);
    CHECK(t.gen(n, 2) == x * x + Scalar(n) * ds);
    CHECK(t.gen(n, 3) == x * x * x + Scalar(n) * ds * x + Scalar(n - 1) * x * ds + binomial(n, 2) * d2s);
    CHECK(t.gen(n, 4) == x * x * x * x + Scalar(n) * ds * x * x + Scalar(n - 1) * x * ds * x +
                             Scalar(n - 2) * x * x * ds + binomial(n, 2) * d2s * x + Scalar(n * (n - 2)) * ds * ds +
                             binomial(n - 1, 2) * x * d2s + binomial(n, 3) * d3s);
  }
}

TEST_CASE("duality under the involution") {
  BellTable<FreeElement> t(s());
  BellTable<FreeElement> ts(conjugate(s()));
  for (int n = 0; n <= 8; ++n) {
    CHECK(conjugate(t.left(n)) == ts.right(n));
    CHECK(conjugate(t.right(n)) == ts.left(n));
  }
}

TEST_CASE("right Bell polynomials as signed powers of L_s on e") {
  BellTable<FreeElement> t(s());
  const auto ls = make_ls(s());
  FreeElement value = FreeElement::one();
  for (int n = 0; n <= 8; ++n) {
    CHECK(t.right(n) == ((n % 2 == 0) ? value : -value));
    value = op_apply(ls, value);
  }
}

TEST_CASE("H operators realize division of D^n") {
  BellTable<FreeElement> t(s());
  const auto e = FreeElement::one();
  const auto ls = make_ls(s());
  for (int n = 1; n <= 7; ++n) {
    CAPTURE(n);
    const auto right = op_add(op_compose(t.h(n - 1), ls), Op::constant(t.left(n)));
    CHECK(agrees(right, Op::d_power(e, n)));
    const auto left = op_add(op_compose(ls, t.h_plus(n - 1)), Op::constant(t.right(n)));
    CHECK(agrees(left, Op::d_power(e, n)));
  }
}

TEST_CASE("index errors") {
  BellTable<FreeElement> t(s());
  CHECK_THROWS_AS(t.left(-1), IndexOutOfRange);
  CHECK_THROWS_AS(t.gen(2, 3), IndexOutOfRange);
  CHECK_THROWS_AS(t.gen(2, -1), IndexOutOfRange);
  CHECK_THROWS_AS(t.h(-2), IndexOutOfRange);
}

TEST_CASE("jet realization: D^n phi = B_n(s) phi and D^n phi = (-1)^n phi B_n^+(s)") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    const int dim = 1 + trial % 2;
    const auto phi = oracle::random_invertible_jet(rng, dim, 8, 14);
    BellTable<MatrixJet> left(log_derivative(phi, Side::right));
    BellTable<MatrixJet> right(log_derivative(phi, Side::left));
    MatrixJet dphi = phi;
    for (int n = 0; n <= 6; ++n) {
      CAPTURE(n);
      CHECK(agrees(dphi, left.left(n) * phi));
      const MatrixJet signed_right = (n % 2 == 0) ? phi * right.right(n) : -(phi * right.right(n));
      CHECK(agrees(dphi, signed_right));
      dphi = derive(dphi);
    }
  }
}

TEST_CASE("commutative collapse to complete Bell polynomials") {
  // Y_{n+1} = sum_i C(n, i) Y_{n-i} s^{(i)} on scalar series.
  std::mt19937 rng(42);
  const auto sj = oracle::random_jet(rng, 1, 6, 14);
  BellTable<MatrixJet> t(sj);
  std::vector<MatrixJet> y{MatrixJet::identity(1)};
  for (int n = 0; n < 6; ++n) {
    MatrixJet next = MatrixJet::zero(1);
    for (int i = 0; i <= n; ++i) next = next + binomial(n, i) * (y[n - i] * oracle::nth_derivative(sj, i));
    y.push_back(next);
  }
  for (int n = 0; n <= 6; ++n) CHECK(agrees(t.left(n), y[n]));
}

TEST_CASE("a shared table answers consistently across threads") {
  BellTable<FreeElement> t(s());
  std::vector<std::string> seen(4);
  std::vector<std::thread> pool;
  for (int w = 0; w < 4; ++w)
    pool.emplace_back([&, w] {
      std::string acc;
      for (int n = 8; n >= 0; --n) acc += format_element(t.gen(8, n)) + format_element(t.right(n)) + "|";
      seen[w] = acc;
    });
  for (auto& th : pool) th.join();
  for (int w = 1; w < 4; ++w) CHECK(seen[w] == seen[0]);
  CHECK(t.gen(8, 8) == oracle::gen_bell(8, 8, s()));
}

TEST_CASE("H operators: small cases and the D-recurrence") {
  BellTable<FreeElement> t(s());
  const auto e = FreeElement::one();
  CHECK(format_operator(t.h(0)) == "e");
  CHECK(format_operator(t.h(1)) == "D + s");
  CHECK(format_operator(t.h(2)) == "D^2 + s*D + s^2 + 2*D(s)");
  CHECK(format_operator(t.h_plus(0)) == "e");
  CHECK(format_operator(t.h_plus(1)) == "D + s");
  CHECK(format_operator(t.h_plus(2)) == "D^2 + s*D + s^2 - D(s)");
  const auto d = Op::d_power(e, 1);
  for (int n = 1; n <= 6; ++n) CHECK(agrees(t.h(n), op_add(op_compose(d, t.h(n - 1)), Op::constant(t.left(n)))));
  CHECK(t.gen(5, 0) == e);
}
