#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ncdiff/division.hpp"
#include "ncdiff/format.hpp"
#include "oracles.hpp"

using namespace ncdiff;

namespace {

using Op = DiffOperator<FreeElement>;
using JOp = DiffOperator<MatrixJet>;
const std::vector<std::string> kGens{"s", "u", "v"};

FreeElement gen(const char* name) { return FreeElement::generator(name); }
const FreeElement kE = FreeElement::one();
const FreeElement kZ = FreeElement::zero();

template <class R>
DiffOperator<R> rebuild(const DivisionOutcome<R>& out, const R& s) {
  const auto ls = make_ls(s);
  const auto body = out.side == Side::right ? op_compose(out.quotient, ls) : op_compose(ls, out.quotient);
  return op_add(body, DiffOperator<R>::constant(out.remainder));
}

}  // namespace

TEST_CASE("D divided by L_s") {
  const auto s = gen("s");
  const Op d({kZ, kE});
  for (Side side : {Side::right, Side::left}) {
    const auto out = divide(d, BellTable<FreeElement>(s), side);
    CHECK(format_operator(out.quotient) == "e");
    CHECK(out.remainder == s);
    CHECK(!out.exact);
  }
}

TEST_CASE("D^2 divided by L_s") {
  const auto s = gen("s");
  const Op d2({kZ, kZ, kE});
  const auto right = divide_right(d2, s);
  CHECK(format_operator(right.quotient) == "D + s");
  CHECK(format_element(right.remainder) == "s^2 + D(s)");
  const auto left = divide_left(d2, s);
  CHECK(format_operator(left.quotient) == "D + s");
  CHECK(format_element(left.remainder) == "s^2 - D(s)");
}

TEST_CASE("order-0 operators cannot be divided") {
  CHECK_THROWS_AS(divide_right(Op::constant(gen("u")), gen("s")), IndexOutOfRange);
  CHECK_THROWS_AS(divide_left(Op(), gen("s")), IndexOutOfRange);
}

TEST_CASE("random free operators: both sides against long division") {
  std::mt19937 rng(51);
  const auto s = gen("s");
  for (int trial = 0; trial < 40; ++trial) {
    const auto l = oracle::random_operator(rng, kGens, 1 + trial % 4);
    CAPTURE(format_operator(l));
    BellTable<FreeElement> table(s);
    const auto right = divide_right(l, table);
    const auto [rq, rr] = oracle::long_divide_right(l, s);
    CHECK(agrees(right.quotient, rq));
    CHECK(right.remainder == rr);
    CHECK(agrees(rebuild(right, s), l));

    const auto left = divide_left(l, table);
    const auto [lq, lr] = oracle::long_divide_left(l, s);
    CHECK(agrees(left.quotient, lq));
    CHECK(left.remainder == lr);
    CHECK(agrees(rebuild(left, s), l));
    CHECK(agrees(left.quotient, divide_left_power_form(l, s).quotient));

    // Degree contract.
    CHECK(right.quotient.order() == l.order() - 1);
    CHECK(right.quotient[l.order() - 1] == l[l.order()]);
    CHECK(left.quotient[l.order() - 1] == l[l.order()]);

    // Remainder straight from the table.
    FreeElement r;
    for (int n = 0; n <= l.order(); ++n) r = r + l[n] * table.left(n);
    CHECK(r == right.remainder);
  }
}

TEST_CASE("division with a composite s") {
  std::mt19937 rng(52);
  const auto s = gen("u") * gen("v") - Scalar(1, 2) * derive(gen("u"));
  for (int trial = 0; trial < 10; ++trial) {
    const auto l = oracle::random_operator(rng, kGens, 1 + trial % 3);
    CHECK(agrees(rebuild(divide_right(l, s), s), l));
    CHECK(agrees(rebuild(divide_left(l, s), s), l));
  }
}

TEST_CASE("the left Bell form read with left coefficients misses derivative terms") {
  // For L = u D the remainder is s u - D(u); pairing B_k^+ with the left
  // coefficients gives only s u.
  const auto s = gen("s");
  const auto u = gen("u");
  const Op l({kZ, u});
  BellTable<FreeElement> table(s);
  FreeElement naive;
  for (int k = 0; k <= l.order(); ++k) naive = naive + table.right(k) * l[k];
  CHECK(format_element(naive) == "s*u");
  CHECK(format_element(divide_left(l, table).remainder) == "s*u - D(u)");
}

TEST_CASE("random matrix-jet operators round-trip") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const int order = 1 + trial % 5;
    const auto l = oracle::random_jet_operator(rng, 2, order, 3, 16);
    const auto s = oracle::random_jet(rng, 2, 3, 16);
    BellTable<MatrixJet> table(s);
    CHECK(agrees(rebuild(divide_right(l, table), s), l));
    CHECK(agrees(rebuild(divide_left(l, table), s), l));
  }
}

TEST_CASE("nilpotent leading coefficient") {
  const RationalMatrix nil{{0, 1}, {0, 0}};
  const JOp l({MatrixJet::identity(2, 16), MatrixJet::zero(2, 16), MatrixJet::constant(nil, 16)});
  std::mt19937 rng(54);
  const auto s = oracle::random_jet(rng, 2, 3, 16);
  CHECK(agrees(rebuild(divide_right(l, s), s), l));
  CHECK(agrees(rebuild(divide_left(l, s), s), l));
}

TEST_CASE("jets run out of precision") {
  const JOp l({MatrixJet::zero(1), MatrixJet::zero(1), MatrixJet::zero(1), MatrixJet::identity(1)});
  const auto s = MatrixJet::scalar_series({1, 1}, 1);
  CHECK_THROWS_AS(divide_right(l, s), PrecisionExhausted);
}

TEST_CASE("Riccati residuals") {
  const auto s = gen("s");
  BellTable<FreeElement> table(s);
  const Op exact({-table.left(2), kZ, kE});
  CHECK(is_zero(riccati_residual(exact, table, Side::right)));
  CHECK(agrees(op_compose(Op({s, kE}), make_ls(s)), exact));
  CHECK(format_element(riccati_residual(Op({kZ, kZ, kE}), s, Side::right)) == "s^2 + D(s)");
  CHECK(is_zero(riccati_residual(Op({kZ, kZ, kE}), kZ, Side::right)));
  CHECK(is_zero(riccati_residual(Op({kZ, kZ, kE}), kZ, Side::left)));
}

TEST_CASE("kernel of D^2: phi = 1 + x") {
  const JOp l({MatrixJet::zero(1), MatrixJet::zero(1), MatrixJet::identity(1)});
  const auto phi = MatrixJet::scalar_series({1, 1}, 16);
  const auto fact = factor_from_kernel(l, phi, Side::right);
  CHECK(agrees(fact.s, invert(phi)));
  CHECK(fact.outcome.exact);
  CHECK(agrees(op_compose(fact.outcome.quotient, make_ls(fact.s)), l));
}

TEST_CASE("kernel of D^2 - lambda^2") {
  for (const Scalar lambda : {Scalar(1), Scalar(-2, 3), Scalar(5, 2)}) {
    const JOp l({MatrixJet::constant(RationalMatrix{{-lambda * lambda}}), MatrixJet::zero(1), MatrixJet::identity(1)});
    const auto phi = exp_series(lambda, 16, 16);
    const auto fact = factor_from_kernel(l, phi, Side::right);
    CHECK(agrees(fact.s, MatrixJet::constant(RationalMatrix{{lambda}})));
    CHECK(agrees(op_compose(fact.outcome.quotient, make_ls(fact.s)), l));
    CHECK(agrees(fact.outcome.quotient, JOp({MatrixJet::constant(RationalMatrix{{lambda}}), MatrixJet::identity(1)})));
  }
}

TEST_CASE("left kernel factorization") {
  // phi . (L_s o M^+) = 0 when D phi = -phi s, i.e. s = -phi^-1 phi'.
  std::mt19937 rng(55);
  for (int trial = 0; trial < 4; ++trial) {
    const auto phi = oracle::random_invertible_jet(rng, 2, 4, 16);
    const auto s = log_derivative(phi, Side::left);
    const auto m = oracle::random_jet_operator(rng, 2, 1 + trial % 3, 2, 16);
    const auto l = op_compose(make_ls(s), m);
    CHECK(op_apply_right(phi, l).is_zero());
    const auto fact = factor_from_kernel(l, phi, Side::left);
    CHECK(fact.outcome.exact);
    CHECK(agrees(fact.outcome.quotient, m));
  }
}

TEST_CASE("kernel premise and singular phi") {
  const JOp l({MatrixJet::zero(1), MatrixJet::zero(1), MatrixJet::identity(1)});
  CHECK_THROWS_AS(factor_from_kernel(l, MatrixJet::scalar_series({1, 0, 1}, 16), Side::right), KernelPremiseViolated);
  CHECK_THROWS_AS(factor_from_kernel(l, MatrixJet::scalar_series({0, 1}, 16), Side::right), SingularConstantTerm);
}
