#pragma once

#include <limits>
#include <vector>

#include "ncdiff/rational_matrix.hpp"
#include "ncdiff/ring.hpp"
#include "ncdiff/scalar.hpp"

namespace ncdiff {

// Valid x-order of a coefficient level that is known exactly to all orders
// (constants such as the unit e).
inline constexpr int kExactOrder = std::numeric_limits<int>::max();

// Square matrix of truncated power series in x, or in x and t (bi-jet).
//
// A jet stores t-levels 0..t_order; level m holds the x-series coefficients
// c[m][0..J_m] where J_m is the valid x-order of that level. The orders form a
// non-increasing staircase J_0 >= J_1 >= ... (enforced on construction), which
// is exactly what products need: coefficient (m, k) of a*b is valid iff
// k <= min(J^a_m, J^b_m).
//
// Precision ledger:
//   a + b, a * b   level orders are the pointwise min, t_order the min
//   derive         every finite level order drops by 1 (error below 0)
//   derive_t       level m takes level m+1's order, t_order drops by 1
//   conjugate, invert   orders unchanged
//
// Involution: c[m][k] -> (-1)^k c[m][k]^T, i.e. transpose of a(-x, t).
class MatrixJet {
 public:
  MatrixJet() = default;

  static MatrixJet zero(int dim, int x_order = kExactOrder);
  static MatrixJet identity(int dim, int x_order = kExactOrder);
  static MatrixJet constant(const RationalMatrix& value, int x_order = kExactOrder);
  // x-series from coefficient list; entries past x_order are dropped, missing ones are zero.
  static MatrixJet series(const std::vector<RationalMatrix>& coeffs, int x_order);
  static MatrixJet scalar_series(const std::vector<Scalar>& coeffs, int x_order);
  // Bi-jet with t_order = levels.size() - 1.
  static MatrixJet bivariate(const std::vector<std::vector<RationalMatrix>>& levels,
                             std::vector<int> x_orders);

  int dim() const noexcept { return dim_; }
  bool is_bivariate() const noexcept { return bivariate_; }
  int t_order() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  int x_order(int level = 0) const;
  std::vector<int> x_orders() const;

  // Coefficient of t^level x^k; zero past storage, PrecisionExhausted past validity.
  RationalMatrix coefficient(int level, int k) const;
  RationalMatrix coefficient(int k) const { return coefficient(0, k); }
  // All coefficients of a level that can be nonzero: J_m + 1 of them for a
  // finite order, the stored polynomial for an exact one.
  std::vector<RationalMatrix> level_coefficients(int level) const;

  bool is_zero() const;

  // Plain jet -> bi-jet constant in t.
  MatrixJet lift_t(int t_order) const;
  // Lowers every level's x-order to at most x_order.
  MatrixJet truncate(int x_order) const;

  friend MatrixJet operator+(const MatrixJet& a, const MatrixJet& b);
  friend MatrixJet operator-(const MatrixJet& a, const MatrixJet& b);
  friend MatrixJet operator-(const MatrixJet& a);
  friend MatrixJet operator*(const MatrixJet& a, const MatrixJet& b);
  friend MatrixJet operator*(const Scalar& c, const MatrixJet& a);

  friend MatrixJet derive(const MatrixJet& a);
  friend MatrixJet derive_t(const MatrixJet& a);
  friend MatrixJet conjugate(const MatrixJet& a);
  friend MatrixJet invert(const MatrixJet& a);
  friend MatrixJet one_like(const MatrixJet& a);
  friend MatrixJet zero_like(const MatrixJet& a);
  friend bool agrees(const MatrixJet& a, const MatrixJet& b);

 private:
  struct Level {
    int order = kExactOrder;
    std::vector<RationalMatrix> c;  // trailing entries past c.size() are zero
  };

  MatrixJet(int dim, bool bivariate, std::vector<Level> levels);

  const RationalMatrix* stored(int level, int k) const;
  void normalize();
  static void require_compatible(const MatrixJet& a, const MatrixJet& b, const char* op);
  static MatrixJet add(const MatrixJet& a, const MatrixJet& b, int sign);

  int dim_ = 0;
  bool bivariate_ = false;
  std::vector<Level> levels_;
};

inline bool is_zero(const MatrixJet& a) { return a.is_zero(); }

// Truncated exponential sum_{k <= degree} (A x)^k / k!, valid to x_order.
MatrixJet exp_series(const RationalMatrix& a, int degree, int x_order);
MatrixJet exp_series(const Scalar& lambda, int degree, int x_order);

// Side::right: phi' phi^-1 (so D phi = s phi); Side::left: -phi^-1 phi' (so D phi = -phi s).
MatrixJet log_derivative(const MatrixJet& phi, Side side);

}  // namespace ncdiff
