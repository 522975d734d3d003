#include "lagrange/stokes/solve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "lagrange/linalg/errors.hpp"

namespace lagrange::stokes {

using linalg::apply;
using linalg::apply_transpose;
using linalg::norm2;

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

PressureField pad_pressure(const MacGrid& grid, const Vector& pinned) {
  PressureField p(grid);
  std::copy(pinned.begin(), pinned.end(), p.values.begin());
  return zero_mean_project(std::move(p));
}

// Two-point Gauss average over the square of side h centred at (x, y).
double cell_average(const ScalarField& f, Point c, double h) {
  const double o = 0.5 * h / std::sqrt(3.0);
  return 0.25 * (f(c.x - o, c.y - o) + f(c.x + o, c.y - o) + f(c.x - o, c.y + o) +
                 f(c.x + o, c.y + o));
}

}  // namespace

Vector sample_forcing(const MacGrid& grid, const ManufacturedCase& c) {
  const std::size_t n = grid.n();
  const double h2 = grid.h() * grid.h();
  Vector b(grid.num_velocity());
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Point q = grid.u_position(i, j);
      b[grid.u_index(i, j)] = h2 * c.fx(q.x, q.y);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) {
      const Point q = grid.v_position(i, j);
      b[grid.v_index(i, j)] = h2 * c.fy(q.x, q.y);
    }
  return b;
}

VelocityField sample_velocity(const MacGrid& grid, const ManufacturedCase& c) {
  const std::size_t n = grid.n();
  VelocityField u(grid);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Point q = grid.u_position(i, j);
      u.values[grid.u_index(i, j)] = c.u(q.x, q.y);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) {
      const Point q = grid.v_position(i, j);
      u.values[grid.v_index(i, j)] = c.v(q.x, q.y);
    }
  return u;
}

PressureField sample_pressure(const MacGrid& grid, const ManufacturedCase& c) {
  PressureField p(grid);
  for (std::size_t i = 0; i < grid.n(); ++i)
    for (std::size_t j = 0; j < grid.n(); ++j) {
      const Point q = grid.p_position(i, j);
      p.values[grid.p_index(i, j)] = c.p(q.x, q.y);
    }
  return p;
}

PressureField zero_mean_project(PressureField p) {
  if (p.values.empty()) return p;
  const double mean = linalg::sum(p.values) / static_cast<double>(p.values.size());
  for (double& v : p.values) v -= mean;
  return p;
}

StokesSystem::StokesSystem(const MacGrid& grid)
    : grid_(grid), ops_(assemble_operators(grid)) {
  const SparseOperator pinned = ops_.B.row_block(0, grid.num_pressure() - 1);
  base_ = std::make_shared<const qp::QpProblem>(ops_.A, Vector(grid.num_velocity()), pinned);
  poisson_ = std::make_shared<const linalg::EnvelopeCholesky>(
      linalg::multiply(pinned, pinned.transpose()));
}

qp::QpProblem StokesSystem::problem(const Vector& b) const { return base_->with_linear_term(b); }

Vector StokesSystem::project_divergence_free(const Vector& w) const {
  const SparseOperator& c = base_->C();
  return w - apply_transpose(c, poisson_->solve(apply(c, w)));
}

StokesSolution solve_stokes_coupled(const StokesSystem& system, const ManufacturedCase& c,
                                    double tol) {
  const qp::QpProblem problem = system.problem(sample_forcing(system.grid(), c));
  qp::SaddleSolution s = qp::solve_kkt_direct(problem, tol);
  VelocityField u(system.grid(), s.x);
  PressureField p = pad_pressure(system.grid(), s.lambda);
  return {std::move(u), std::move(p), std::move(s)};
}

StokesSolution solve_stokes_coupled(const MacGrid& grid, const ManufacturedCase& c, double tol) {
  return solve_stokes_coupled(StokesSystem(grid), c, tol);
}

StokesSolution solve_stokes_minimization(const StokesSystem& system, const ManufacturedCase& c,
                                         double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const qp::QpProblem problem = system.problem(sample_forcing(system.grid(), c));
  const SparseOperator& a = problem.A();
  const std::size_t nu = problem.num_variables();

  // CG on P A P restricted to Ker B; started at zero the iterates never leave it.
  const linalg::LinearMap reduced = [&](const Vector& w) {
    return system.project_divergence_free(apply(a, system.project_divergence_free(w)));
  };
  const Vector pb = system.project_divergence_free(problem.b());
  Vector u(nu);
  std::size_t iterations = 0;
  if (norm2(pb) > 0.0) {
    const auto r = linalg::conjugate_gradient(reduced, nu, pb, std::max(tol * 1e-2, 1e-14));
    if (!r.report.converged) {
      throw qp::SolveError("solve_stokes_minimization: projected CG did not converge: relative "
                           "residual " + sci(r.report.residual_norm),
                           "projected CG");
    }
    u = system.project_divergence_free(r.x);
    iterations = r.report.iterations;
  }

  qp::SaddleSolution s;
  s.method = qp::Method::nullspace;
  s.iterations = iterations;
  s.x = std::move(u);
  s.lambda = qp::recover_multiplier(problem, s.x, tol);
  qp::compute_residuals(problem, s);
  const double bound = tol * problem.scale(s.x);
  if (s.residual_stationarity > bound || s.residual_feasibility > bound) {
    throw qp::SolveError("solve_stokes_minimization missed its residual contract: stationarity " +
                             sci(s.residual_stationarity) + ", feasibility " +
                             sci(s.residual_feasibility) + ", bound " + sci(bound),
                         "contract");
  }
  VelocityField vel(system.grid(), s.x);
  PressureField p = pad_pressure(system.grid(), s.lambda);
  return {std::move(vel), std::move(p), std::move(s)};
}

StokesSolution solve_stokes_minimization(const MacGrid& grid, const ManufacturedCase& c,
                                         double tol) {
  return solve_stokes_minimization(StokesSystem(grid), c, tol);
}

qp::OptimalityReport check_optimality(const StokesSystem& system, const Vector& b,
                                      const Vector& u, double tol) {
  linalg::require_size(u.size(), system.grid().num_velocity(), "check_optimality velocity");
  linalg::require_size(b.size(), system.grid().num_velocity(), "check_optimality load");
  qp::OptimalityReport r;
  r.projected_gradient_norm =
      norm2(system.project_divergence_free(apply(system.operators().A, u) - b));
  r.feasibility_norm = norm2(apply(system.operators().B, u));
  r.is_minimizer = r.projected_gradient_norm <= tol && r.feasibility_norm <= tol;
  return r;
}

ErrorNorms error_norms(const VelocityField& u, const PressureField& p, const ManufacturedCase& c) {
  if (!(u.grid == p.grid)) throw DimensionError("error_norms: velocity and pressure grids differ");
  const MacGrid& grid = u.grid;
  const double h = grid.h();
  const VelocityField ue = sample_velocity(grid, c);
  const Vector du = u.values - ue.values;
  const PressureField pe = zero_mean_project(sample_pressure(grid, c));
  const Vector dp = zero_mean_project(p).values - pe.values;
  return {h * norm2(du), h * norm2(dp), linalg::norm_inf(du)};
}

double observed_order(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

std::vector<ConvergenceRow> convergence_study(const ManufacturedCase& c,
                                              const std::vector<std::size_t>& n_list, double tol,
                                              bool inject_exact) {
  std::vector<ConvergenceRow> rows;
  for (std::size_t n : n_list) {
    const MacGrid grid(n);
    ConvergenceRow row;
    row.n = n;
    row.h = grid.h();
    if (inject_exact) {
      VelocityField u(grid);
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          u.values[grid.u_index(i, j)] = cell_average(c.u, grid.u_position(i, j), grid.h());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j)
          u.values[grid.v_index(i, j)] = cell_average(c.v, grid.v_position(i, j), grid.h());
      PressureField p(grid);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          p.values[grid.p_index(i, j)] = cell_average(c.p, grid.p_position(i, j), grid.h());
      row.errors = error_norms(u, p, c);
    } else {
      const StokesSolution s = solve_stokes_coupled(grid, c, tol);
      row.errors = error_norms(s.velocity, s.pressure, c);
    }
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      row.order_u = observed_order(prev.errors.l2_u, row.errors.l2_u, prev.h, row.h);
      row.order_p = observed_order(prev.errors.l2_p, row.errors.l2_p, prev.h, row.h);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lagrange::stokes
