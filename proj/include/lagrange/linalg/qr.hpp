#pragma once

#include <cstddef>
#include <vector>

#include "lagrange/linalg/dense.hpp"
#include "lagrange/linalg/sparse.hpp"
#include "lagrange/linalg/vector.hpp"

namespace lagrange::linalg {

/// Full-rank test threshold: sigma_min >= kRankTol * sigma_max.
inline constexpr double kRankTol = 1e-10;

/// Householder QR with column pivoting of C^T, for an M x N operator C.
///
///   C^T P = Q R,   Q orthogonal N x N (stored as reflectors),
///                  R upper triangular rank x rank.
///
/// The first `rank()` columns of Q span range(C^T); the remaining N - rank
/// columns are an orthonormal basis of Ker C. The factorization stops at the
/// numerical rank, judged by |R_kk| against kRankTol * |R_00| (the
/// column-pivoted diagonal stands in for the singular values).
class PivotedQr {
 public:
  explicit PivotedQr(const SparseOperator& c, double rank_tol = kRankTol);
  explicit PivotedQr(const DenseMatrix& c, double rank_tol = kRankTol);

  std::size_t rows() const noexcept { return m_; }   // M (rows of C)
  std::size_t cols() const noexcept { return n_; }   // N (cols of C)
  std::size_t rank() const noexcept { return rank_; }
  bool full_row_rank() const noexcept { return rank_ == m_; }
  /// |R_00| and |R_{r-1,r-1}| of the pivoted factorization.
  double largest_pivot() const noexcept { return largest_; }
  double smallest_pivot() const noexcept { return smallest_; }

  /// Q^T g for g of length N.
  Vector apply_qt(const Vector& g) const;
  /// Q y for y of length N.
  Vector apply_q(const Vector& y) const;

  /// Orthonormal basis of Ker C (N - rank vectors).
  std::vector<Vector> kernel_basis() const;
  /// ||Z^T g|| for Z any orthonormal basis of Ker C.
  double kernel_component_norm(const Vector& g) const;

  /// Minimum-norm x with C x = d (requires full row rank).
  Vector min_norm_solution(const Vector& d) const;
  /// Least-squares lambda minimizing ||C^T lambda - g|| (requires full row
  /// rank; the minimizer is then unique).
  Vector least_squares_transpose(const Vector& g) const;

 private:
  void factor(std::vector<Vector> columns, double rank_tol);
  void require_full_rank(const char* what) const;

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::size_t rank_ = 0;
  double largest_ = 0.0;
  double smallest_ = 0.0;
  std::vector<Vector> reflectors_;   // v_k, length N, zero above row k
  std::vector<double> betas_;        // H_k = I - beta_k v_k v_k^T
  DenseMatrix r_;                    // rank x rank upper triangle
  std::vector<std::size_t> perm_;    // pivoted position -> row of C
};

/// Orthonormal basis of Ker C for a full-row-rank C. Throws
/// RankDeficientError when sigma_min < rank_tol * sigma_max.
std::vector<Vector> orthonormal_nullspace_basis(const SparseOperator& c,
                                                double rank_tol = kRankTol);

/// Orthonormal basis of the numerical kernel of C, any rank.
std::vector<Vector> numerical_kernel(const DenseMatrix& c,
                                     double rank_tol = kRankTol);

}  // namespace lagrange::linalg
