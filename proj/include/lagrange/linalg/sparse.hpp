#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lagrange/linalg/dense.hpp"
#include "lagrange/linalg/vector.hpp"

namespace lagrange::linalg {

enum class Symmetry { general, symmetric };

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed-row sparse operator with sorted column indices.
///
/// Assembly accepts unordered triplets; duplicates are summed and the result
/// is canonicalized so that the same set of triplets always yields the same
/// storage. Both triangles of a symmetric operator are stored; the symmetric
/// flag is only granted after an exact value(i,j) == value(j,i) check.
class SparseOperator {
 public:
  SparseOperator() = default;

  static SparseOperator from_triplets(std::size_t rows, std::size_t cols,
                                      std::vector<Triplet> triplets,
                                      Symmetry symmetry = Symmetry::general);
  static SparseOperator identity(std::size_t n);
  static SparseOperator diagonal(const Vector& d);
  /// Every entry of `dense` (zeros dropped) as a sparse operator.
  static SparseOperator from_dense(const DenseMatrix& dense,
                                   Symmetry symmetry = Symmetry::general);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  Symmetry symmetry() const noexcept { return symmetry_; }
  bool is_symmetric() const noexcept { return symmetry_ == Symmetry::symmetric; }

  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Stored value at (i, j), zero when the pair is not stored.
  double at(std::size_t i, std::size_t j) const;

  SparseOperator transpose() const;
  /// Rows [first, first + count) as a new operator.
  SparseOperator row_block(std::size_t first, std::size_t count) const;
  std::vector<Triplet> triplets() const;
  DenseMatrix to_dense() const;
  double frobenius_norm() const;

  /// Checks value(i,j) == value(j,i) bitwise over all stored pairs.
  bool has_exact_symmetry() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Symmetry symmetry_ = Symmetry::general;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// op * x. Throws DimensionError on a length mismatch and NonFiniteError if x
/// or the stored values contain NaN/Inf.
Vector apply(const SparseOperator& op, const Vector& x);
/// op^T * x without forming the transpose.
Vector apply_transpose(const SparseOperator& op, const Vector& x);

/// a * b for sparse operands.
SparseOperator multiply(const SparseOperator& a, const SparseOperator& b);

}  // namespace lagrange::linalg
