#include "ncdiff/division.hpp"

namespace ncdiff {

KernelFactorization factor_from_kernel(const DiffOperator<MatrixJet>& l, const MatrixJet& phi, Side side) {
  const MatrixJet image = side == Side::right ? op_apply(l, phi) : op_apply_right(phi, l);
  if (!is_zero(image))
    throw KernelPremiseViolated(side == Side::right ? "L phi != 0: phi is not in the kernel of L"
                                                    : "phi . L != 0: phi is not in the left kernel of L");
  MatrixJet s = log_derivative(phi, side);
  BellTable<MatrixJet> table(s);
  auto outcome = divide(l, table, side);
  if (!outcome.exact) throw std::logic_error("kernel element produced a nonzero division remainder");
  return {std::move(s), std::move(outcome)};
}

}  // namespace ncdiff
