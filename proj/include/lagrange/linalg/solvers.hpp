#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lagrange/linalg/dense.hpp"
#include "lagrange/linalg/sparse.hpp"
#include "lagrange/linalg/vector.hpp"

namespace lagrange::linalg {

inline constexpr double kDefaultTol = 1e-10;

/// Outcome of a linear solve. `residual_norm` is relative: ||op x - b|| / ||b||
/// (the absolute norm when b = 0), recomputed from the returned x.
struct SolverReport {
  std::size_t iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
  std::optional<std::string> breakdown_reason;
};

struct SolveResult {
  Vector x;
  SolverReport report;
};

/// Matrix-free linear map x -> op(x).
using LinearMap = std::function<Vector(const Vector&)>;

/// Conjugate gradients for a symmetric positive definite operator.
///
/// Converged means ||op x - b|| <= tol * ||b|| on the true residual. A
/// direction with non-positive curvature stops the iteration with
/// converged = false and breakdown_reason set. `max_iter` = 0 selects the
/// library default of 10 * dimension.
SolveResult conjugate_gradient(const SparseOperator& op, const Vector& b,
                               double tol = kDefaultTol,
                               std::size_t max_iter = 0);
SolveResult conjugate_gradient(const LinearMap& op, std::size_t dim,
                               const Vector& b, double tol = kDefaultTol,
                               std::size_t max_iter = 0);

/// Dense Bunch-Kaufman factorization P A P^T = L D L^T of a symmetric
/// (possibly indefinite) matrix, D block diagonal with 1x1 and 2x2 blocks.
class BunchKaufmanFactor {
 public:
  explicit BunchKaufmanFactor(const SparseOperator& symmetric_op);
  explicit BunchKaufmanFactor(DenseMatrix symmetric);

  std::size_t size() const noexcept { return n_; }
  Vector solve(const Vector& b) const;
  /// Number of negative eigenvalues (inertia from D).
  std::size_t negative_eigenvalues() const;

 private:
  void factor();

  std::size_t n_ = 0;
  DenseMatrix a_;                      // L below the diagonal, D on/next to it
  std::vector<std::size_t> perm_;      // (P A P^T)(i,j) = A(perm[i], perm[j])
  std::vector<unsigned char> block_;   // 1 or 2; a 2x2 block marks both rows
};

/// Solves op x = b for symmetric op by a pivoted symmetric factorization
/// followed by iterative refinement. Converged means the backward-error bound
/// ||op x - b|| <= 1e-10 (||op||_F ||x|| + ||b||). Throws SingularSystemError
/// naming the deficient pivot.
SolveResult symmetric_indefinite_solve(const SparseOperator& op, const Vector& b);

/// Profile (envelope) Cholesky of a sparse symmetric positive definite
/// operator. Fill stays inside each row's envelope, so banded operators such
/// as grid Laplacians factor in O(n * bandwidth^2).
class EnvelopeCholesky {
 public:
  explicit EnvelopeCholesky(const SparseOperator& spd);

  std::size_t size() const noexcept { return first_.size(); }
  Vector solve(const Vector& b) const;

 private:
  double l(std::size_t i, std::size_t j) const {
    return values_[offset_[i] + (j - first_[i])];
  }

  std::vector<std::size_t> first_;   // first stored column of each row
  std::vector<std::size_t> offset_;  // start of row i in values_
  std::vector<double> values_;       // row i holds L(i, first_[i] .. i)
};

}  // namespace lagrange::linalg
