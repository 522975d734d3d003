#include "lagrange/qp/properties.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "lagrange/linalg/dense.hpp"
#include "lagrange/linalg/errors.hpp"
#include "lagrange/linalg/qr.hpp"
#include "lagrange/qp/infsup.hpp"
#include "lagrange/qp/solvers.hpp"

namespace lagrange::qp {

using linalg::DenseMatrix;
using linalg::norm2;

namespace {

Vector gaussian(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

SparseOperator gaussian_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal;
  DenseMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = normal(rng);
  return SparseOperator::from_dense(g);
}

SparseOperator random_spd(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  DenseMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = normal(rng);
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += g(k, i) * g(k, j);
      a(i, j) = a(j, i) = s / static_cast<double>(n) + (i == j ? 1.0 : 0.0);
    }
  }
  return SparseOperator::from_dense(a, linalg::Symmetry::symmetric);
}

double relative_gap(const Vector& a, const Vector& b) {
  if (a.empty()) return 0.0;
  return norm2(a - b) / std::max(1.0, std::max(norm2(a), norm2(b)));
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

/// Tracks the worst value of a "smaller is better" quantity against a bound.
struct Tracker {
  PropertyResult r;
  Tracker(std::string name, double threshold) {
    r.name = std::move(name);
    r.threshold = threshold;
    r.passed = true;
  }
  void observe(double value, std::size_t instance) {
    ++r.checks;
    r.worst = std::max(r.worst, value);
    if (!(value <= r.threshold) && r.passed) {
      r.passed = false;
      r.detail = "instance " + std::to_string(instance) + fmt(": %.3e > %.1e", value, r.threshold);
    }
  }
  void fail(const std::string& why, std::size_t instance) {
    ++r.checks;
    if (r.passed) {
      r.passed = false;
      r.detail = "instance " + std::to_string(instance) + ": " + why;
    }
  }
};

constexpr std::array<Method, 3> kMethods{Method::direct, Method::nullspace, Method::schur};

}  // namespace

QpProblem random_problem(std::mt19937_64& rng, std::size_t n, std::size_t m,
                         bool inhomogeneous) {
  SparseOperator a = random_spd(rng, n);
  SparseOperator c = gaussian_matrix(rng, m, n);
  Vector b = gaussian(rng, n);
  Vector d = inhomogeneous ? gaussian(rng, m) : Vector(m);
  return QpProblem(std::move(a), std::move(b), std::move(c), std::move(d));
}

SparseOperator random_projector(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  // Orthonormal basis of a random k-dimensional subspace: the complement of
  // the kernel of a random (n - k) x n matrix.
  DenseMatrix g(n - k, n);
  std::normal_distribution<double> normal;
  for (std::size_t i = 0; i < n - k; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = normal(rng);
  const std::vector<Vector> q = linalg::numerical_kernel(g);
  DenseMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (const Vector& col : q) s += col[i] * col[j];
      p(i, j) = p(j, i) = s;
    }
  }
  return SparseOperator::from_dense(p, linalg::Symmetry::symmetric);
}

std::vector<PropertyResult> run_property_suite(const PropertyOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> n_dist(2, 50);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Tracker cross("cross_method_agreement", 1e-7);
  Tracker forward("optimality_forward", 1e-8);
  Tracker converse("optimality_converse", 0.0);
  Tracker relation("multiplier_relation", 1e-8);
  Tracker unique("multiplier_uniqueness", 1e-8);
  Tracker scaling("homogeneity_scaling", 1e-12);
  Tracker shift("homogeneity_shift", 1e-10);
  Tracker gradient_fd("gradient_finite_difference", 1e-6);

  for (std::size_t inst = 0; inst < options.instances; ++inst) {
    const std::size_t n = n_dist(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const bool inhomogeneous = inst % 2 == 1;
    const QpProblem problem = random_problem(rng, n, m, inhomogeneous);
    const std::vector<Vector> z =
        m > 0 ? problem.constraint_factorization()->kernel_basis() : std::vector<Vector>{};
    Vector kernel_dir(n);
    if (m > 0) {
      kernel_dir = z.front();
    } else {
      kernel_dir[0] = 1.0;
    }

    std::vector<SaddleSolution> sols;
    bool solved = true;
    for (Method method : kMethods) {
      try {
        SaddleSolution s = solve(problem, method, options.tol);
        if (options.corrupt_solver) {
          linalg::axpy(1e-3, kernel_dir, s.x);
          compute_residuals(problem, s);
        }
        sols.push_back(std::move(s));
      } catch (const Error& e) {
        cross.fail(std::string(to_string(method)) + " failed: " + e.what(), inst);
        solved = false;
      }
    }
    if (!solved) continue;

    for (std::size_t i = 0; i < sols.size(); ++i) {
      for (std::size_t j = i + 1; j < sols.size(); ++j) {
        cross.observe(std::max(relative_gap(sols[i].x, sols[j].x),
                               relative_gap(sols[i].lambda, sols[j].lambda)),
                      inst);
      }
    }

    for (const SaddleSolution& s : sols) {
      const OptimalityReport rep = check_optimality(problem, s.x, 1e-8);
      forward.observe(std::max(rep.projected_gradient_norm, rep.feasibility_norm), inst);
      const Vector r = gradient(problem, s.x) -
                       (m > 0 ? linalg::apply_transpose(problem.C(), s.lambda) : Vector(n));
      relation.observe(norm2(r) / problem.scale(s.x), inst);
    }

    // Converse direction: an x with vanishing projected gradient beats every
    // feasible competitor x + Z w.
    for (const SaddleSolution& s : sols) {
      const OptimalityReport rep = check_optimality(problem, s.x, 1e-10);
      if (rep.projected_gradient_norm > 1e-10) {
        converse.fail(std::string(to_string(s.method)) +
                          fmt(" output has projected gradient %.3e above 1e-10",
                              rep.projected_gradient_norm),
                      inst);
        continue;
      }
      const double j_best = objective(problem, s.x);
      const double slack = 1e-12 * problem.scale(s.x);
      double worst = 0.0;
      for (std::size_t k = 0; k < options.feasible_samples; ++k) {
        Vector y = s.x;
        const double radius = std::pow(10.0, -6.0 + 6.0 * unit(rng));
        if (m > 0) {
          const Vector w = gaussian(rng, z.size());
          for (std::size_t c = 0; c < z.size(); ++c) linalg::axpy(radius * w[c], z[c], y);
        } else {
          y += radius * gaussian(rng, n);
        }
        worst = std::max(worst, j_best - objective(problem, y) - slack);
      }
      converse.observe(worst, inst);
    }

    if (m > 0) {
      try {
        const Vector recovered = recover_multiplier(problem, sols.front().x, options.tol);
        unique.observe(norm2(recovered - sols.front().lambda) /
                           std::max(1.0, norm2(sols.front().lambda)),
                       inst);
      } catch (const Error& e) {
        unique.fail(std::string("recovery failed: ") + e.what(), inst);
      }
    }

    if (!inhomogeneous) {
      const double alpha = 0.25 + 4.0 * unit(rng);
      try {
        SaddleSolution s = solve_kkt_direct(problem.with_linear_term(alpha * problem.b()),
                                            options.tol);
        if (options.corrupt_solver) linalg::axpy(1e-3, kernel_dir, s.x);
        scaling.observe(std::max(relative_gap(s.x, alpha * sols.front().x),
                                 relative_gap(s.lambda, alpha * sols.front().lambda)),
                        inst);
      } catch (const Error& e) {
        scaling.fail(e.what(), inst);
      }
    }

    if (m > 0) {
      const Vector mu = gaussian(rng, m);
      try {
        SaddleSolution s = solve_kkt_direct(
            problem.with_linear_term(problem.b() + linalg::apply_transpose(problem.C(), mu)),
            options.tol);
        if (options.corrupt_solver) linalg::axpy(1e-3, kernel_dir, s.x);
        // A x - (b + C^T mu) = C^T lambda'  gives  lambda' = lambda - mu.
        shift.observe(std::max(relative_gap(s.x, sols.front().x),
                               relative_gap(s.lambda, sols.front().lambda - mu)),
                      inst);
      } catch (const Error& e) {
        shift.fail(e.what(), inst);
      }
    }

    {
      const Vector x = gaussian(rng, n);
      const Vector g = gradient(problem, x);
      const double h = 1e-5;
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        Vector xp = x;
        Vector xm = x;
        xp[i] += h;
        xm[i] -= h;
        const double fd = (objective(problem, xp) - objective(problem, xm)) / (2.0 * h);
        worst = std::max(worst, std::fabs(fd - g[i]));
      }
      gradient_fd.observe(worst, inst);
    }
  }

  Tracker two_form("infsup_two_form", 1e-8);
  Tracker projection("infsup_projection", 1e-12);
  for (std::size_t inst = 0; inst < options.infsup_instances; ++inst) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 24)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
    const SparseOperator a = random_spd(rng, n);
    const SparseOperator mq = random_spd(rng, m);
    const SparseOperator c = gaussian_matrix(rng, m, n);
    try {
      const auto dual = estimate_infsup(c, a, mq, InfSupForm::dual_form);
      const auto primal = estimate_infsup(c, a, mq, InfSupForm::primal_form);
      two_form.observe(std::fabs(dual.beta - primal.beta) / std::max(dual.beta, 1e-300), inst);
    } catch (const Error& e) {
      two_form.fail(e.what(), inst);
    }

    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
    const SparseOperator p = random_projector(rng, n, k);
    const SparseOperator id = SparseOperator::identity(n);
    try {
      const auto est = estimate_infsup(p, id, id, InfSupForm::dual_form);
      projection.observe(std::fabs(est.beta - 1.0), inst);
    } catch (const Error& e) {
      projection.fail(e.what(), inst);
    }
  }

  return {cross.r,   forward.r, converse.r,     relation.r, unique.r,
          scaling.r, shift.r,   gradient_fd.r,  two_form.r, projection.r};
}

}  // namespace lagrange::qp
