#pragma once

#include <string>

#include "lagrange/linalg/errors.hpp"
#include "lagrange/linalg/solvers.hpp"
#include "lagrange/qp/problem.hpp"

namespace lagrange::qp {

inline constexpr double kDefaultTol = linalg::kDefaultTol;

/// x is not a constrained minimizer: grad J(x) is not in range(C^T) (or x is
/// infeasible), so no multiplier satisfies A x - b = C^T lambda.
class NotAMinimizerError : public Error {
 public:
  using Error::Error;
};

/// A solve path finished but its residual contract was not met, or one of its
/// inner iterations failed. `stage()` names the failing part ("inner CG",
/// "outer CG", "contract").
class SolveError : public Error {
 public:
  SolveError(const std::string& what, std::string stage)
      : Error(what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Symmetric saddle operator [[A, C^T], [C, 0]] of size N + M; A itself when
/// M = 0. The multiplier of this symmetric system is the negative of lambda
/// in A x - b = C^T lambda.
SparseOperator assemble_kkt(const QpProblem& problem);

/// Factorizes the saddle operator directly (Bunch-Kaufman).
SaddleSolution solve_kkt_direct(const QpProblem& problem, double tol = kDefaultTol);

/// Minimum-norm feasible point plus a correction in Ker C from the reduced
/// system (Z^T A Z) y = Z^T (b - A x0); the multiplier is then recovered from
/// the minimizer.
SaddleSolution solve_nullspace(const QpProblem& problem, double tol = kDefaultTol);

/// Dual route: CG on (C A^{-1} C^T) mu = C A^{-1} b - d with inner CG solves
/// on A, then x = A^{-1}(b - C^T mu) and lambda = -mu.
SaddleSolution solve_schur(const QpProblem& problem, double tol = kDefaultTol);

SaddleSolution solve(const QpProblem& problem, Method method, double tol = kDefaultTol);

/// Absolute-tolerance optimality test on ||Z^T (A x - b)|| and ||C x - d||.
OptimalityReport check_optimality(const QpProblem& problem, const Vector& x,
                                  double tol = kDefaultTol);

/// Least-squares lambda of C^T lambda = A x - b. Unique because C has full
/// row rank. Throws NotAMinimizerError when x is infeasible or the
/// least-squares residual exceeds tol * scale(x).
Vector recover_multiplier(const QpProblem& problem, const Vector& x,
                          double tol = kDefaultTol);

}  // namespace lagrange::qp
