#pragma once

#include <cstddef>
#include <vector>

#include "specdec/polynomial.hpp"
#include "specdec/ratfunc.hpp"

namespace specdec {

/// Small dense matrix, row-major. Used with Rational, Polynomial,
/// RationalFunction and double elements.
template <typename T>
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(size_t n, const T& one) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  T& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const T& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Matrix operator*(const Matrix& o) const {
    Matrix out(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t k = 0; k < cols_; ++k) {
        const T& a = at(i, k);
        for (size_t j = 0; j < o.cols_; ++j) {
          out.at(i, j) = out.at(i, j) + a * o.at(k, j);
        }
      }
    }
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    Matrix out(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - o.data_[i];
    return out;
  }

private:
  size_t rows_, cols_;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<Polynomial>;
using RatFuncMatrix = Matrix<RationalFunction>;

/// Exact determinant (Gaussian elimination over Q).
Rational rational_det(RationalMatrix m);

/// Exact inverse; throws SingularMatrixError.
RationalMatrix rational_inverse(const RationalMatrix& m);

/// Solves m x = rhs for several right-hand sides (columns of rhs).
RationalMatrix rational_solve(RationalMatrix m, RationalMatrix rhs);

size_t rational_rank(RationalMatrix m);

/// det(zI - M), monic, via Faddeev-LeVerrier.
Polynomial charpoly(const RationalMatrix& m);

/// Fraction-free (Bareiss) determinant of a polynomial matrix.
Polynomial bareiss_det(PolyMatrix m);

/// Exact inverse over the function field Q(z). The elimination runs
/// fraction-free on a denominator-cleared polynomial matrix; the result is
/// verified by multiplying back to the identity. Throws SingularMatrixError
/// when det is identically zero.
RatFuncMatrix ratfunc_matrix_inverse(const RatFuncMatrix& m);

}  // namespace specdec
