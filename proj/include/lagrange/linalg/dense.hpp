#pragma once

#include <cstddef>
#include <vector>

#include "lagrange/linalg/vector.hpp"

namespace lagrange::linalg {

/// Row-major dense matrix. Used for desk-scale factorizations (reduced
/// Hessians, Schur complements, Ritz problems); never for the large sparse
/// operators themselves.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static DenseMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all of equal length).
  static DenseMatrix from_columns(const std::vector<Vector>& columns,
                                  std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  double* row(std::size_t i) noexcept { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const noexcept {
    return data_.data() + i * cols_;
  }

  Vector column(std::size_t j) const;
  void set_column(std::size_t j, const Vector& v);

  DenseMatrix transpose() const;
  double frobenius_norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Vector multiply(const DenseMatrix& a, const Vector& x);
Vector multiply_transpose(const DenseMatrix& a, const Vector& x);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

/// Dense Cholesky factorization A = L L^T of a symmetric positive definite
/// matrix. Throws SingularSystemError naming the first non-positive pivot.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const DenseMatrix& spd);

  std::size_t size() const noexcept { return l_.rows(); }
  Vector solve(const Vector& b) const;
  /// Solves L y = b.
  Vector solve_lower(const Vector& b) const;
  /// Solves L^T x = y.
  Vector solve_upper(const Vector& y) const;

 private:
  DenseMatrix l_;
};

struct SymmetricEigensystem {
  Vector values;        // ascending
  DenseMatrix vectors;  // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi eigensolver for small symmetric matrices.
SymmetricEigensystem symmetric_eigensystem(const DenseMatrix& a);

}  // namespace lagrange::linalg
