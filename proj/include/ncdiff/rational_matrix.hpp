#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "ncdiff/scalar.hpp"

namespace ncdiff {

// Dense n x n matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static RationalMatrix identity(int dim);
  static RationalMatrix zero(int dim) { return RationalMatrix(dim); }

  int dim() const noexcept { return dim_; }
  Scalar& operator()(int i, int j) { return data_[index(i, j)]; }
  const Scalar& operator()(int i, int j) const { return data_[index(i, j)]; }

  bool is_zero() const;
  RationalMatrix transpose() const;
  // Gauss-Jordan; throws SingularConstantTerm.
  RationalMatrix inverse() const;

  RationalMatrix& operator+=(const RationalMatrix& rhs);
  RationalMatrix& operator-=(const RationalMatrix& rhs);
  RationalMatrix& operator*=(const Scalar& c);

  // out += a * b without temporaries; hot loop of jet products.
  static void multiply_add(RationalMatrix& out, const RationalMatrix& a, const RationalMatrix& b);

  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator-(RationalMatrix a) { return a *= Scalar(-1); }
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Scalar& c, RationalMatrix a) { return a *= c; }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * dim_ + j; }

  int dim_ = 0;
  std::vector<Scalar> data_;
};

}  // namespace ncdiff
