#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "ncdiff/bell.hpp"
#include "ncdiff/diff_operator.hpp"
#include "ncdiff/errors.hpp"
#include "ncdiff/matrix_jet.hpp"
#include "ncdiff/ring.hpp"

namespace ncdiff {

// Right side: L = quotient o L_s + remainder.
// Left side:  L = L_s o quotient + remainder.
template <DifferentialRing R>
struct DivisionOutcome {
  DiffOperator<R> quotient;
  R remainder;
  Side side = Side::right;
  bool exact = false;
};

namespace detail {

template <DifferentialRing R>
void require_positive_order(const DiffOperator<R>& l) {
  if (l.order() < 1) throw IndexOutOfRange("division by L_s needs an operator of order >= 1");
}

}  // namespace detail

// remainder r = sum_n a_n B_n(s), quotient b_n = sum_{k>n} a_k B_{k-1,n}(s).
template <DifferentialRing R>
DivisionOutcome<R> divide_right(const DiffOperator<R>& l, const BellTable<R>& table) {
  detail::require_positive_order(l);
  const int n_top = l.order();
  R remainder = zero_like(table.s());
  for (int n = 0; n <= n_top; ++n)
    if (!is_zero(l[n])) remainder = remainder + l[n] * table.left(n);

  // Quotient sum_k a_k H_{k-1}; the D^n coefficient of H_m is B_{m,m-n}.
  std::vector<R> quotient;
  for (int n = 0; n < n_top; ++n) {
    R b = zero_like(table.s());
    for (int k = n + 1; k <= n_top; ++k)
      if (!is_zero(l[k])) b = b + l[k] * table.gen(k - 1, k - 1 - n);
    quotient.push_back(std::move(b));
  }
  const bool exact = is_zero(remainder);
  return {DiffOperator<R>(std::move(quotient)), std::move(remainder), Side::right, exact};
}

template <DifferentialRing R>
DivisionOutcome<R> divide_right(const DiffOperator<R>& l, const R& s) {
  BellTable<R> table(s);
  return divide_right(l, table);
}

// Left division through the L_s-power form: with L_s acting on elements as
// x -> Dx - s x,
//   b_n^+ = sum_{k>n} (-1)^{k-n-1} L_s^{k-n-1} a_k,   r^+ = sum_k (-1)^k L_s^k a_k.
// Valid for coefficients on the left of D.
template <DifferentialRing R>
DivisionOutcome<R> divide_left_power_form(const DiffOperator<R>& l, const R& s) {
  detail::require_positive_order(l);
  const int n_top = l.order();
  // powers[k][j] = (-1)^j L_s^j a_k
  auto signed_ls_powers = [&](const R& a, int count) {
    std::vector<R> out{a};
    for (int j = 1; j <= count; ++j) {
      const R& prev = out.back();
      out.push_back(s * prev - derive(prev));
    }
    return out;
  };
  std::vector<std::vector<R>> powers;
  for (int k = 0; k <= n_top; ++k) powers.push_back(signed_ls_powers(l[k], k));

  R remainder = zero_like(s);
  for (int k = 0; k <= n_top; ++k) remainder = remainder + powers[k][k];
  std::vector<R> quotient;
  for (int n = 0; n < n_top; ++n) {
    R b = zero_like(s);
    for (int k = n + 1; k <= n_top; ++k) b = b + powers[k][k - n - 1];
    quotient.push_back(std::move(b));
  }
  const bool exact = is_zero(remainder);
  return {DiffOperator<R>(std::move(quotient)), std::move(remainder), Side::left, exact};
}

// Left division in right Bell polynomials. With L = sum_k D^k o c_k (the
// right-coefficient form of L) and D^k = L_s H_{k-1}^+ + B_k^+(s):
//   r^+ = sum_k B_k^+(s) c_k,
//   M^+ = sum_k H_{k-1}^+ o c_k = sum_{k>n} B_{k-n-1}^+(s) D^n o c_k.
// For constant coefficients c_k = a_k and the D^n o c_k reduce to c_k D^n.
// The power form is recomputed as a cross-check; disagreement is a logic error.
template <DifferentialRing R>
DivisionOutcome<R> divide_left(const DiffOperator<R>& l, const BellTable<R>& table) {
  detail::require_positive_order(l);
  const int n_top = l.order();
  const auto c = right_coefficients(l);

  R remainder = zero_like(table.s());
  for (int k = 0; k <= n_top; ++k)
    if (!is_zero(c[k])) remainder = remainder + table.right(k) * c[k];

  // D^n o c = sum_i C(n, i) D^i(c) D^{n-i}
  std::vector<R> quotient(static_cast<std::size_t>(n_top), zero_like(table.s()));
  for (int k = 1; k <= n_top; ++k) {
    if (is_zero(c[k])) continue;
    std::vector<R> dc{c[k]};
    for (int i = 1; i < k; ++i) dc.push_back(derive(dc.back()));
    for (int n = 0; n < k; ++n) {
      const R& bell = table.right(k - n - 1);
      for (int i = 0; i <= n; ++i)
        quotient[static_cast<std::size_t>(n - i)] =
            quotient[static_cast<std::size_t>(n - i)] + binomial(n, i) * (bell * dc[static_cast<std::size_t>(i)]);
    }
  }
  DivisionOutcome<R> out{DiffOperator<R>(std::move(quotient)), std::move(remainder), Side::left, false};
  out.exact = is_zero(out.remainder);

  const auto check = divide_left_power_form(l, table.s());
  if (!agrees(check.remainder, out.remainder) || !agrees(check.quotient, out.quotient))
    throw std::logic_error("left division: Bell form and L_s-power form disagree");
  return out;
}

template <DifferentialRing R>
DivisionOutcome<R> divide_left(const DiffOperator<R>& l, const R& s) {
  BellTable<R> table(s);
  return divide_left(l, table);
}

template <DifferentialRing R>
DivisionOutcome<R> divide(const DiffOperator<R>& l, const BellTable<R>& table, Side side) {
  return side == Side::right ? divide_right(l, table) : divide_left(l, table);
}

// Generalized Riccati residual: the division remainder. Zero iff L factors
// through L_s on that side.
template <DifferentialRing R>
R riccati_residual(const DiffOperator<R>& l, const BellTable<R>& table, Side side) {
  return divide(l, table, side).remainder;
}

template <DifferentialRing R>
R riccati_residual(const DiffOperator<R>& l, const R& s, Side side) {
  BellTable<R> table(s);
  return riccati_residual(l, table, side);
}

struct KernelFactorization {
  MatrixJet s;
  DivisionOutcome<MatrixJet> outcome;
};

// Right: L phi = 0 gives s = phi' phi^-1 and L = M o L_s.
// Left:  phi . L = sum (-D)^n (phi a_n) = 0 gives s = -phi^-1 phi' and L = L_s o M^+.
KernelFactorization factor_from_kernel(const DiffOperator<MatrixJet>& l, const MatrixJet& phi, Side side);

}  // namespace ncdiff
