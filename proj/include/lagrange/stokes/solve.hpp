#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lagrange/linalg/solvers.hpp"
#include "lagrange/qp/problem.hpp"
#include "lagrange/qp/solvers.hpp"
#include "lagrange/stokes/cases.hpp"
#include "lagrange/stokes/grid.hpp"
#include "lagrange/stokes/operators.hpp"

namespace lagrange::stokes {

/// Face-centre samples of f times h^2: the load vector b of the discrete J.
Vector sample_forcing(const MacGrid& grid, const ManufacturedCase& c);

VelocityField sample_velocity(const MacGrid& grid, const ManufacturedCase& c);
PressureField sample_pressure(const MacGrid& grid, const ManufacturedCase& c);

/// Subtracts the cell average.
PressureField zero_mean_project(PressureField p);

/// Operators of one grid plus the pieces both formulations share.
///
/// B has the constants in its left kernel, so the constraint handed to the
/// saddle solvers is B with its last row dropped. The kernel is unchanged
/// and the multiplier of the dropped cell is fixed to zero; the reported
/// pressure is then shifted to zero mean.
class StokesSystem {
 public:
  explicit StokesSystem(const MacGrid& grid);

  const MacGrid& grid() const noexcept { return grid_; }
  const StokesOperators& operators() const noexcept { return ops_; }

  /// Pinned saddle problem with load b; the constraint factorization is shared.
  qp::QpProblem problem(const Vector& b) const;

  /// Orthogonal projection onto Ker B (one pressure Poisson solve).
  Vector project_divergence_free(const Vector& w) const;

 private:
  MacGrid grid_;
  StokesOperators ops_;
  std::shared_ptr<const qp::QpProblem> base_;
  std::shared_ptr<const linalg::EnvelopeCholesky> poisson_;
};

struct StokesSolution {
  VelocityField velocity;
  PressureField pressure;   // zero mean
  qp::SaddleSolution saddle;  // for the pinned problem
};

/// One symmetric indefinite solve of the saddle system.
StokesSolution solve_stokes_coupled(const StokesSystem& system, const ManufacturedCase& c,
                                    double tol = qp::kDefaultTol);
StokesSolution solve_stokes_coupled(const MacGrid& grid, const ManufacturedCase& c,
                                    double tol = qp::kDefaultTol);

/// Minimizes J over Ker B by projected CG, then recovers the pressure as
/// the least-squares multiplier of B^T p = A u - b.
StokesSolution solve_stokes_minimization(const StokesSystem& system, const ManufacturedCase& c,
                                         double tol = qp::kDefaultTol);
StokesSolution solve_stokes_minimization(const MacGrid& grid, const ManufacturedCase& c,
                                         double tol = qp::kDefaultTol);

/// Matrix-free optimality check: ||P (A u - b)|| with P the projection onto
/// Ker B, and ||B u||.
qp::OptimalityReport check_optimality(const StokesSystem& system, const Vector& b,
                                      const Vector& u, double tol = qp::kDefaultTol);

struct ErrorNorms {
  double l2_u = 0.0;    // sqrt(h^2 sum over faces)
  double l2_p = 0.0;    // both pressures zero-mean projected first
  double linf_u = 0.0;
};

ErrorNorms error_norms(const VelocityField& u, const PressureField& p, const ManufacturedCase& c);

struct ConvergenceRow {
  std::size_t n = 0;
  double h = 0.0;
  ErrorNorms errors;
  std::optional<double> order_u;  // against the previous row
  std::optional<double> order_p;
};

double observed_order(double e_coarse, double e_fine, double h_coarse, double h_fine);

/// Coupled solves over the listed grids. With inject_exact the numerical
/// fields are replaced by control-volume averages of the exact solution
/// (2x2 Gauss), whose deviation from point values is O(h^2); this checks
/// the harness itself.
std::vector<ConvergenceRow> convergence_study(const ManufacturedCase& c,
                                              const std::vector<std::size_t>& n_list,
                                              double tol = qp::kDefaultTol,
                                              bool inject_exact = false);

}  // namespace lagrange::stokes
