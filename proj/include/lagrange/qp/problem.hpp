#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>

#include "lagrange/linalg/qr.hpp"
#include "lagrange/linalg/sparse.hpp"
#include "lagrange/linalg/vector.hpp"

namespace lagrange::qp {

using linalg::SparseOperator;
using linalg::Vector;

/// Equality-constrained quadratic program
///
///     minimize   J(x) = 1/2 x^T A x - b^T x
///     subject to C x = d
///
/// with A (N x N) symmetric positive definite and C (M x N, M < N) of full
/// row rank. d = 0 is the homogeneous setting (minimization over Ker C); a
/// nonzero d shifts the feasible set to an affine subspace.
///
/// Construction validates every invariant and keeps the rank-revealing
/// factorization of C^T, which the null-space solver, the optimality check
/// and multiplier recovery reuse. Instances are immutable.
class QpProblem {
 public:
  QpProblem(SparseOperator a, Vector b, SparseOperator c, Vector d);
  /// Homogeneous constraint C x = 0.
  QpProblem(SparseOperator a, Vector b, SparseOperator c);

  const SparseOperator& A() const noexcept { return a_; }
  const Vector& b() const noexcept { return b_; }
  const SparseOperator& C() const noexcept { return c_; }
  const Vector& d() const noexcept { return d_; }

  std::size_t num_variables() const noexcept { return a_.rows(); }      // N
  std::size_t num_constraints() const noexcept { return c_.rows(); }    // M

  /// Factorization C^T P = Q R; empty when M = 0.
  const linalg::PivotedQr* constraint_factorization() const noexcept { return qr_.get(); }

  /// ||A||_F ||x||_2 + ||b||_2, the normalization for residual contracts.
  double scale(const Vector& x) const;

  /// Same A, C, d with a different linear term.
  QpProblem with_linear_term(Vector b) const;

 private:
  QpProblem() = default;

  SparseOperator a_;
  Vector b_;
  SparseOperator c_;
  Vector d_;
  double a_frobenius_ = 0.0;
  std::shared_ptr<const linalg::PivotedQr> qr_;
};

enum class Method { direct, nullspace, schur };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

/// Primal point, multiplier and residuals from one solve path. `lambda`
/// follows the sign convention A x - b = C^T lambda.
struct SaddleSolution {
  Vector x;
  Vector lambda;
  double residual_stationarity = 0.0;   // ||A x - b - C^T lambda||
  double residual_feasibility = 0.0;    // ||C x - d||
  Method method = Method::direct;
  std::size_t iterations = 0;
};

/// Optimality certificate: x minimizes J over the feasible set
/// iff the gradient annihilates Ker C, i.e. Z^T (A x - b) = 0.
struct OptimalityReport {
  double projected_gradient_norm = 0.0;   // ||Z^T (A x - b)||
  double feasibility_norm = 0.0;          // ||C x - d||
  bool is_minimizer = false;
};

/// grad J(x) = A x - b.
Vector gradient(const QpProblem& problem, const Vector& x);
/// J(x) = 1/2 x^T A x - b^T x.
double objective(const QpProblem& problem, const Vector& x);

/// Fills the two residual norms of `solution` from its x and lambda.
void compute_residuals(const QpProblem& problem, SaddleSolution& solution);

}  // namespace lagrange::qp
