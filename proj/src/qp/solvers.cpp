#include "lagrange/qp/solvers.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "lagrange/linalg/dense.hpp"
#include "lagrange/linalg/errors.hpp"

namespace lagrange::qp {

using linalg::apply;
using linalg::apply_transpose;
using linalg::norm2;

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void enforce_contract(const QpProblem& problem, const SaddleSolution& s, double tol) {
  const double bound = tol * problem.scale(s.x);
  if (s.residual_stationarity > bound || s.residual_feasibility > bound) {
    throw SolveError(std::string(to_string(s.method)) +
                         " solve missed its residual contract: stationarity " +
                         sci(s.residual_stationarity) + ", feasibility " +
                         sci(s.residual_feasibility) + ", bound " + sci(bound),
                     "contract");
  }
}

void require_tol(double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
}

}  // namespace

SparseOperator assemble_kkt(const QpProblem& problem) {
  const std::size_t n = problem.num_variables();
  const std::size_t m = problem.num_constraints();
  if (m == 0) return problem.A();
  std::vector<linalg::Triplet> t = problem.A().triplets();
  t.reserve(t.size() + 2 * problem.C().nnz());
  for (const auto& e : problem.C().triplets()) {
    t.push_back({n + e.row, e.col, e.value});
    t.push_back({e.col, n + e.row, e.value});
  }
  return SparseOperator::from_triplets(n + m, n + m, std::move(t), linalg::Symmetry::symmetric);
}

SaddleSolution solve_kkt_direct(const QpProblem& problem, double tol) {
  require_tol(tol);
  const std::size_t n = problem.num_variables();
  const std::size_t m = problem.num_constraints();
  const SparseOperator kkt = assemble_kkt(problem);
  const Vector rhs = m > 0 ? linalg::concat(problem.b(), problem.d()) : problem.b();

  linalg::SolveResult result;
  try {
    result = linalg::symmetric_indefinite_solve(kkt, rhs);
  } catch (const SingularSystemError& e) {
    std::string hypothesis;
    try {
      linalg::EnvelopeCholesky check(problem.A());
      hypothesis = "C appears rank deficient";
    } catch (const SingularSystemError&) {
      hypothesis = "A is not numerically positive definite";
    }
    throw SingularSystemError(std::string("solve_kkt_direct: saddle system is singular (") +
                                  hypothesis + "): " + e.what(),
                              e.pivot());
  }

  SaddleSolution s;
  s.method = Method::direct;
  s.iterations = result.report.iterations;
  s.x = linalg::slice(result.x, 0, n);
  // Symmetric system multiplier mu satisfies A x + C^T mu = b.
  s.lambda = -linalg::slice(result.x, n, m);
  compute_residuals(problem, s);
  enforce_contract(problem, s, tol);
  return s;
}

SaddleSolution solve_nullspace(const QpProblem& problem, double tol) {
  require_tol(tol);
  const std::size_t n = problem.num_variables();
  const std::size_t m = problem.num_constraints();
  const linalg::PivotedQr* qr = problem.constraint_factorization();

  Vector x0 = m > 0 ? qr->min_norm_solution(problem.d()) : Vector(n);
  std::vector<Vector> z;
  if (m > 0) {
    z = qr->kernel_basis();
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      Vector e(n);
      e[i] = 1.0;
      z.push_back(std::move(e));
    }
  }
  const std::size_t k = z.size();

  std::vector<Vector> az(k);
  for (std::size_t j = 0; j < k; ++j) az[j] = apply(problem.A(), z[j]);
  linalg::DenseMatrix reduced(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = 0.5 * (linalg::dot(z[i], az[j]) + linalg::dot(z[j], az[i]));
      reduced(i, j) = reduced(j, i) = v;
    }
  }
  const Vector residual0 = problem.b() - apply(problem.A(), x0);
  Vector rhs(k);
  for (std::size_t i = 0; i < k; ++i) rhs[i] = linalg::dot(z[i], residual0);

  Vector y;
  try {
    y = linalg::CholeskyFactor(reduced).solve(rhs);
  } catch (const SingularSystemError& e) {
    throw SingularSystemError(
        std::string("solve_nullspace: reduced Hessian Z^T A Z is not positive definite: ") +
            e.what(),
        e.pivot());
  }
  for (std::size_t j = 0; j < k; ++j) linalg::axpy(y[j], z[j], x0);

  SaddleSolution s;
  s.method = Method::nullspace;
  s.x = std::move(x0);
  s.lambda = recover_multiplier(problem, s.x, tol);
  compute_residuals(problem, s);
  enforce_contract(problem, s, tol);
  return s;
}

SaddleSolution solve_schur(const QpProblem& problem, double tol) {
  require_tol(tol);
  const std::size_t m = problem.num_constraints();
  const double inner_tol = std::max(tol * 1e-3, 1e-14);
  const double outer_tol = std::max(tol * 1e-2, 1e-14);
  std::size_t inner_iterations = 0;

  auto solve_a = [&](const Vector& rhs, const char* what) {
    auto r = linalg::conjugate_gradient(problem.A(), rhs, inner_tol);
    inner_iterations += r.report.iterations;
    if (!r.report.converged) {
      throw SolveError(std::string("solve_schur: inner CG on A did not converge (") + what +
                           "): relative residual " + sci(r.report.residual_norm) +
                           (r.report.breakdown_reason ? ", " + *r.report.breakdown_reason
                                                      : std::string()),
                       "inner CG");
    }
    return std::move(r.x);
  };

  SaddleSolution s;
  s.method = Method::schur;
  if (m == 0) {
    s.x = solve_a(problem.b(), "unconstrained");
    s.iterations = 0;
    compute_residuals(problem, s);
    enforce_contract(problem, s, tol);
    return s;
  }

  const Vector a_inv_b = solve_a(problem.b(), "right-hand side");
  const Vector schur_rhs = apply(problem.C(), a_inv_b) - problem.d();
  const linalg::LinearMap schur = [&](const Vector& mu) {
    return apply(problem.C(), solve_a(apply_transpose(problem.C(), mu), "Schur product"));
  };
  const auto outer = linalg::conjugate_gradient(schur, m, schur_rhs, outer_tol);
  if (!outer.report.converged) {
    throw SolveError("solve_schur: outer CG on C A^-1 C^T did not converge: relative residual " +
                         sci(outer.report.residual_norm) +
                         (outer.report.breakdown_reason ? ", " + *outer.report.breakdown_reason
                                                        : std::string()),
                     "outer CG");
  }
  s.x = solve_a(problem.b() - apply_transpose(problem.C(), outer.x), "primal recovery");
  s.lambda = -outer.x;
  s.iterations = outer.report.iterations;
  compute_residuals(problem, s);
  enforce_contract(problem, s, tol);
  return s;
}

SaddleSolution solve(const QpProblem& problem, Method method, double tol) {
  switch (method) {
    case Method::direct: return solve_kkt_direct(problem, tol);
    case Method::nullspace: return solve_nullspace(problem, tol);
    case Method::schur: return solve_schur(problem, tol);
  }
  throw InvalidArgument("unknown method");
}

OptimalityReport check_optimality(const QpProblem& problem, const Vector& x, double tol) {
  linalg::require_size(x.size(), problem.num_variables(), "check_optimality");
  const Vector g = gradient(problem, x);
  OptimalityReport report;
  if (problem.num_constraints() == 0) {
    report.projected_gradient_norm = norm2(g);
    report.feasibility_norm = 0.0;
  } else {
    report.projected_gradient_norm = problem.constraint_factorization()->kernel_component_norm(g);
    report.feasibility_norm = norm2(apply(problem.C(), x) - problem.d());
  }
  report.is_minimizer =
      report.projected_gradient_norm <= tol && report.feasibility_norm <= tol;
  return report;
}

Vector recover_multiplier(const QpProblem& problem, const Vector& x, double tol) {
  linalg::require_size(x.size(), problem.num_variables(), "recover_multiplier");
  const Vector g = gradient(problem, x);
  const double bound = tol * problem.scale(x);
  if (problem.num_constraints() == 0) {
    if (norm2(g) > bound) {
      throw NotAMinimizerError("recover_multiplier: unconstrained gradient norm " +
                               sci(norm2(g)) + " exceeds " + sci(bound));
    }
    return Vector();
  }
  const double feasibility = norm2(apply(problem.C(), x) - problem.d());
  if (feasibility > bound) {
    throw NotAMinimizerError("recover_multiplier: x is infeasible, ||C x - d|| = " +
                             sci(feasibility) + " exceeds " + sci(bound));
  }
  const linalg::PivotedQr& qr = *problem.constraint_factorization();
  Vector lambda = qr.least_squares_transpose(g);
  const double residual = norm2(apply_transpose(problem.C(), lambda) - g);
  if (residual > bound) {
    throw NotAMinimizerError(
        "recover_multiplier: gradient is not in range(C^T), least-squares residual " +
        sci(residual) + " exceeds " + sci(bound));
  }
  return lambda;
}

}  // namespace lagrange::qp
