#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ncdiff/bell.hpp"
#include "ncdiff/diff_operator.hpp"
#include "ncdiff/division.hpp"
#include "ncdiff/errors.hpp"
#include "ncdiff/matrix_jet.hpp"
#include "ncdiff/ring.hpp"

namespace ncdiff {

template <DifferentialRing R>
struct DarbouxOutcome {
  DiffOperator<R> transformed;  // L~ = L_s M + r
  R remainder;                  // r from right division by L_s
  R intertwine_defect;          // the order-0 part of L_s L - L~ L_s
  R burgers_rhs;                // sum_n (Da_n B_n + a_n B_{n+1} - s a_n B_n)
};

// L~ = sum_{n>=1} (a_n' H_{n-1} + a_n H_n - s a_n H_{n-1}) + a_0.
template <DifferentialRing R>
DiffOperator<R> transformed_operator(const DiffOperator<R>& l, const BellTable<R>& table) {
  if (l.order() < 1) throw IndexOutOfRange("Darboux transform needs an operator of order >= 1");
  const R& s = table.s();
  DiffOperator<R> out = DiffOperator<R>::constant(l[0]);
  for (int n = 1; n <= l.order(); ++n) {
    const R& a = l[n];
    if (is_zero(a)) continue;
    out = op_add(out, op_scale(derive(a) - s * a, table.h(n - 1)));
    out = op_add(out, op_scale(a, table.h(n)));
  }
  return out;
}

// L_s o L - L~ o L_s, which must be an order-0 operator; returns its coefficient.
template <DifferentialRing R>
R intertwine_defect(const DiffOperator<R>& l, const DiffOperator<R>& ltilde, const R& s) {
  const auto ls = make_ls(s);
  const auto diff = op_sub(op_compose(ls, l), op_compose(ltilde, ls));
  if (diff.order() > 0)
    throw DefectNotScalar("L_s L - L~ L_s has order " + std::to_string(diff.order()) + "; L~ is not the transform");
  return diff.coeff(0, s);
}

template <DifferentialRing R>
R burgers_rhs(const DiffOperator<R>& l, const BellTable<R>& table) {
  const R& s = table.s();
  R out = zero_like(s);
  for (int n = 0; n <= l.order(); ++n) {
    const R& a = l[n];
    if (is_zero(a)) continue;
    const R& bn = table.left(n);
    out = out + derive(a) * bn + a * table.left(n + 1) - s * a * bn;
  }
  return out;
}

template <DifferentialRing R>
R burgers_rhs(const DiffOperator<R>& l, const R& s) {
  BellTable<R> table(s);
  return burgers_rhs(l, table);
}

// Builds L~ and checks that the intertwining defect equals both Dr + [r, s]
// and the Burgers right-hand side; a mismatch is a logic error.
template <DifferentialRing R>
DarbouxOutcome<R> darboux_transform(const DiffOperator<R>& l, const BellTable<R>& table) {
  const R& s = table.s();
  auto ltilde = transformed_operator(l, table);
  auto remainder = divide_right(l, table).remainder;
  auto defect = intertwine_defect(l, ltilde, s);
  auto rhs = burgers_rhs(l, table);
  if (!agrees(defect, derive(remainder) + commutator(remainder, s)))
    throw std::logic_error("intertwining defect differs from Dr + [r, s]");
  if (!agrees(defect, rhs)) throw std::logic_error("intertwining defect differs from the Burgers right-hand side");
  if (ltilde.order() != l.order() || !agrees(ltilde[l.order()], l[l.order()]))
    throw std::logic_error("Darboux transform changed the leading coefficient");
  return {std::move(ltilde), std::move(remainder), std::move(defect), std::move(rhs)};
}

template <DifferentialRing R>
DarbouxOutcome<R> darboux_transform(const DiffOperator<R>& l, const R& s) {
  BellTable<R> table(s);
  return darboux_transform(l, table);
}

// psi~ = L_s psi = D psi - s psi.
template <DifferentialRing R>
R matveev_psi(const R& psi, const R& s) {
  return derive(psi) - s * psi;
}

template <DifferentialRing R>
struct CoefficientDiscrepancy {
  int index = 0;  // first k (ascending) where the two routes differ
  R printed;      // from the closed coefficient formula
  R expected;     // from the H-operator expansion of L~
  R difference;   // printed - expected
};

template <DifferentialRing R>
struct CoefficientAudit {
  DiffOperator<R> governing;  // L~ from the H-operator expansion
  std::vector<R> printed;     // a_k[1], k = 0..N
  std::optional<CoefficientDiscrepancy<R>> discrepancy;
};

// Where the closed-formula sum starts. With `after_k` the leading a_k stands
// for the n = k term and the sum runs over n > k; `from_k` also adds the n = k
// term, which counts a_k twice whenever k < N and a_k != 0.
enum class BoundaryReading { after_k, from_k };

// Evaluates the closed formula
//   a_N[1] = a_N,
//   a_k[1] = a_k + sum_n [a_n B_{n,n-k} + (a_n' - s a_n) B_{n-1,n-1-k}]
// with B_{m,j} = 0 outside 0 <= j <= m, and audits it against L~.
template <DifferentialRing R>
CoefficientAudit<R> transformed_coefficients(const DiffOperator<R>& l, const BellTable<R>& table,
                                             BoundaryReading reading = BoundaryReading::after_k) {
  const int n_top = l.order();
  if (n_top < 1) throw IndexOutOfRange("Darboux transform needs an operator of order >= 1");
  const R& s = table.s();
  auto bell = [&](int m, int j) -> R {
    if (m < 0 || j < 0 || j > m) return zero_like(s);
    return table.gen(m, j);
  };
  const int first = reading == BoundaryReading::after_k ? 1 : 0;

  std::vector<R> printed;
  for (int k = 0; k < n_top; ++k) {
    R value = l[k];
    for (int n = k + first; n <= n_top; ++n) {
      const R& a = l[n];
      if (is_zero(a)) continue;
      value = value + a * bell(n, n - k) + (derive(a) - s * a) * bell(n - 1, n - 1 - k);
    }
    printed.push_back(std::move(value));
  }
  printed.push_back(l[n_top]);

  CoefficientAudit<R> audit{transformed_operator(l, table), std::move(printed), std::nullopt};
  for (int k = 0; k <= n_top; ++k) {
    R expected = audit.governing.coeff(k, s);
    if (!agrees(audit.printed[k], expected)) {
      R difference = audit.printed[k] - expected;
      audit.discrepancy = CoefficientDiscrepancy<R>{k, audit.printed[k], std::move(expected), std::move(difference)};
      break;
    }
  }
  return audit;
}

// Taylor propagation of D0 phi = L phi from phi(x, 0) = phi0:
// (m+1) phi_{m+1} = L phi_m. Each t-level costs order(L) x-orders, so phi0
// must be valid to x-order >= order(L) * t_order.
MatrixJet time_propagate(const DiffOperator<MatrixJet>& l, const MatrixJet& phi0, int t_order);

struct MatveevReport {
  MatrixJet phi;
  MatrixJet psi;
  MatrixJet s;
  MatrixJet psi_tilde;
  DiffOperator<MatrixJet> transformed;
  MatrixJet residual;          // D0 psi~ - L~ psi~
  MatrixJet burgers_residual;  // D0 s - burgers_rhs(L, s)
  bool residual_zero = false;
  bool burgers_zero = false;
};

MatveevReport matveev_verify(const DiffOperator<MatrixJet>& l, const MatrixJet& phi0, const MatrixJet& psi0,
                             int t_order);

}  // namespace ncdiff
