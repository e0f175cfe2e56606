#include "ncdiff/darboux.hpp"

#include <string>

namespace ncdiff {

MatrixJet time_propagate(const DiffOperator<MatrixJet>& l, const MatrixJet& phi0, int t_order) {
  if (t_order < 0) throw IndexOutOfRange("t-order must be non-negative");
  if (phi0.is_bivariate()) throw RealizationMismatch("initial condition must be a plain x-jet");
  for (const auto& a : l.coeffs())
    if (a.is_bivariate()) throw RealizationMismatch("time_propagate needs x-jet coefficients");
  const int n = std::max(l.order(), 0);
  const int x_order = phi0.x_order();
  if (x_order != kExactOrder && static_cast<long>(x_order) < static_cast<long>(n) * t_order)
    throw PrecisionExhausted("insufficient x-order: need J >= N*T = " + std::to_string(n * t_order) + ", have J = " +
                             std::to_string(x_order));

  std::vector<std::vector<RationalMatrix>> levels;
  std::vector<int> orders;
  MatrixJet current = phi0;
  for (int m = 0; m <= t_order; ++m) {
    if (m > 0) current = Scalar(1, m) * op_apply(l, current);
    levels.push_back(current.level_coefficients(0));
    orders.push_back(current.x_order());
  }
  if (levels.front().empty()) levels.front().push_back(RationalMatrix(phi0.dim()));
  return MatrixJet::bivariate(levels, orders);
}

MatveevReport matveev_verify(const DiffOperator<MatrixJet>& l, const MatrixJet& phi0, const MatrixJet& psi0,
                             int t_order) {
  MatveevReport report;
  report.phi = time_propagate(l, phi0, t_order);
  report.psi = time_propagate(l, psi0, t_order);
  report.s = log_derivative(report.phi, Side::right);

  const auto lifted = op_map(l, [&](const MatrixJet& a) { return a.lift_t(t_order); });
  BellTable<MatrixJet> table(report.s);
  report.transformed = darboux_transform(lifted, table).transformed;
  report.psi_tilde = matveev_psi(report.psi, report.s);
  report.residual = derive_t(report.psi_tilde) - op_apply(report.transformed, report.psi_tilde);
  report.burgers_residual = derive_t(report.s) - burgers_rhs(lifted, table);
  report.residual_zero = is_zero(report.residual);
  report.burgers_zero = is_zero(report.burgers_residual);
  return report;
}

}  // namespace ncdiff
