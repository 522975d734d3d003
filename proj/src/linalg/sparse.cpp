#include "lagrange/linalg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lagrange/linalg/errors.hpp"

namespace lagrange::linalg {

SparseOperator SparseOperator::from_triplets(std::size_t rows, std::size_t cols,
                                             std::vector<Triplet> triplets,
                                             Symmetry symmetry) {
  for (const Triplet& t : triplets) {
    if (t.row >= rows || t.col >= cols) {
      throw DimensionError("triplet (" + std::to_string(t.row) + ", " +
                           std::to_string(t.col) + ") outside " +
                           std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!std::isfinite(t.value)) {
      throw NonFiniteError("triplet (" + std::to_string(t.row) + ", " +
                           std::to_string(t.col) + ") has a non-finite value");
    }
  }
  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });

  SparseOperator op;
  op.rows_ = rows;
  op.cols_ = cols;
  op.row_ptr_.assign(rows + 1, 0);
  op.col_idx_.reserve(triplets.size());
  op.values_.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size();) {
    const std::size_t r = triplets[k].row;
    const std::size_t c = triplets[k].col;
    double v = 0.0;
    while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) {
      v += triplets[k].value;
      ++k;
    }
    op.col_idx_.push_back(c);
    op.values_.push_back(v);
    ++op.row_ptr_[r + 1];
  }
  for (std::size_t i = 0; i < rows; ++i) op.row_ptr_[i + 1] += op.row_ptr_[i];

  if (symmetry == Symmetry::symmetric) {
    if (rows != cols) {
      throw InvalidArgument("symmetric operator must be square, got " +
                            std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!op.has_exact_symmetry()) {
      throw InvalidArgument("operator flagged symmetric has value(i,j) != value(j,i)");
    }
    op.symmetry_ = Symmetry::symmetric;
  }
  return op;
}

SparseOperator SparseOperator::identity(std::size_t n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, n, std::move(t), Symmetry::symmetric);
}

SparseOperator SparseOperator::diagonal(const Vector& d) {
  std::vector<Triplet> t;
  t.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
  return from_triplets(d.size(), d.size(), std::move(t), Symmetry::symmetric);
}

SparseOperator SparseOperator::from_dense(const DenseMatrix& dense,
                                          Symmetry symmetry) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < dense.rows(); ++i)
    for (std::size_t j = 0; j < dense.cols(); ++j)
      if (dense(i, j) != 0.0) t.push_back({i, j, dense(i, j)});
  return from_triplets(dense.rows(), dense.cols(), std::move(t), symmetry);
}

double SparseOperator::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) {
    throw DimensionError("SparseOperator::at index out of range");
  }
  const auto first = col_idx_.begin() + static_cast<long>(row_ptr_[i]);
  const auto last = col_idx_.begin() + static_cast<long>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

bool SparseOperator::has_exact_symmetry() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (at(col_idx_[k], i) != values_[k]) return false;
    }
  }
  return true;
}

SparseOperator SparseOperator::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      t.push_back({col_idx_[k], i, values_[k]});
  return from_triplets(cols_, rows_, std::move(t), symmetry_);
}

SparseOperator SparseOperator::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) {
    throw DimensionError("row block exceeds operator rows");
  }
  std::vector<Triplet> t;
  for (std::size_t i = first; i < first + count; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      t.push_back({i - first, col_idx_[k], values_[k]});
  return from_triplets(count, cols_, std::move(t));
}

std::vector<Triplet> SparseOperator::triplets() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      t.push_back({i, col_idx_[k], values_[k]});
  return t;
}

DenseMatrix SparseOperator::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      d(i, col_idx_[k]) = values_[k];
  return d;
}

double SparseOperator::frobenius_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

Vector apply(const SparseOperator& op, const Vector& x) {
  require_size(x.size(), op.cols(), "apply");
  require_finite(x, "apply");
  const auto rp = op.row_ptr();
  const auto ci = op.col_idx();
  const auto val = op.values();
  Vector y(op.rows());
  for (std::size_t i = 0; i < op.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) s += val[k] * x[ci[k]];
    y[i] = s;
  }
  require_finite(y, "apply result");
  return y;
}

Vector apply_transpose(const SparseOperator& op, const Vector& x) {
  require_size(x.size(), op.rows(), "apply_transpose");
  require_finite(x, "apply_transpose");
  const auto rp = op.row_ptr();
  const auto ci = op.col_idx();
  const auto val = op.values();
  Vector y(op.cols());
  for (std::size_t i = 0; i < op.rows(); ++i) {
    const double xi = x[i];
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) y[ci[k]] += val[k] * xi;
  }
  require_finite(y, "apply_transpose result");
  return y;
}

SparseOperator multiply(const SparseOperator& a, const SparseOperator& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("sparse product: inner dimensions " +
                         std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()));
  }
  const auto arp = a.row_ptr();
  const auto aci = a.col_idx();
  const auto av = a.values();
  const auto brp = b.row_ptr();
  const auto bci = b.col_idx();
  const auto bv = b.values();
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = arp[i]; k < arp[i + 1]; ++k)
      for (std::size_t l = brp[aci[k]]; l < brp[aci[k] + 1]; ++l)
        t.push_back({i, bci[l], av[k] * bv[l]});
  return SparseOperator::from_triplets(a.rows(), b.cols(), std::move(t));
}

}  // namespace lagrange::linalg
