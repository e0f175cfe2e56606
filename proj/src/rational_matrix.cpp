#include "ncdiff/rational_matrix.hpp"

#include <utility>

#include "ncdiff/errors.hpp"

namespace ncdiff {

namespace {

void require_same_dim(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim() != b.dim())
    throw RealizationMismatch("matrix dimensions differ: " + std::to_string(a.dim()) + " vs " +
                              std::to_string(b.dim()));
}

}  // namespace

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    : RationalMatrix(static_cast<int>(rows.size())) {
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim_) throw RealizationMismatch("matrix literal is not square");
    int j = 0;
    for (const auto& v : row) (*this)(i, j++) = v;
    ++i;
  }
}

RationalMatrix RationalMatrix::identity(int dim) {
  RationalMatrix out(dim);
  for (int i = 0; i < dim; ++i) out(i, i) = 1;
  return out;
}

bool RationalMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

RationalMatrix RationalMatrix::inverse() const {
  RationalMatrix work = *this;
  RationalMatrix out = identity(dim_);
  for (int col = 0; col < dim_; ++col) {
    int pivot = col;
    while (pivot < dim_ && work(pivot, col) == 0) ++pivot;
    if (pivot == dim_) throw SingularConstantTerm("matrix is singular");
    if (pivot != col) {
      for (int j = 0; j < dim_; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(out(pivot, j), out(col, j));
      }
    }
    Scalar inv = 1 / work(col, col);
    for (int j = 0; j < dim_; ++j) {
      work(col, j) *= inv;
      out(col, j) *= inv;
    }
    for (int row = 0; row < dim_; ++row) {
      if (row == col || work(row, col) == 0) continue;
      Scalar factor = work(row, col);
      for (int j = 0; j < dim_; ++j) {
        work(row, j) -= factor * work(col, j);
        out(row, j) -= factor * out(col, j);
      }
    }
  }
  return out;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Scalar& c) {
  for (auto& v : data_) v *= c;
  return *this;
}

void RationalMatrix::multiply_add(RationalMatrix& out, const RationalMatrix& a, const RationalMatrix& b) {
  require_same_dim(a, b);
  require_same_dim(out, a);
  const int n = a.dim_;
  Scalar tmp;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Scalar& aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j) {
        const Scalar& bkj = b(k, j);
        if (bkj == 0) continue;
        tmp = aik * bkj;
        out(i, j) += tmp;
      }
    }
  }
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.dim());
  RationalMatrix::multiply_add(out, a, b);
  return out;
}

}  // namespace ncdiff
