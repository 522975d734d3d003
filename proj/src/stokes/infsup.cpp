#include "lagrange/stokes/infsup.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lagrange/linalg/dense.hpp"
#include "lagrange/linalg/solvers.hpp"
#include "lagrange/stokes/operators.hpp"

namespace lagrange::stokes {

qp::InfSupEstimate estimate_infsup_stokes(const MacGrid& grid, bool deflate_constants,
                                          const linalg::EigenOptions& options) {
  const StokesOperators ops = assemble_operators(grid);
  const std::size_t np = grid.num_pressure();
  const linalg::EnvelopeCholesky a_factor(ops.A);
  const SparseOperator bt = ops.B.transpose();

  // Column j of B A^-1 B^T from one velocity solve.
  linalg::DenseMatrix s(np, np);
  Vector e(np);
  for (std::size_t j = 0; j < np; ++j) {
    e[j] = 1.0;
    const Vector col = linalg::apply(ops.B, a_factor.solve(linalg::apply(bt, e)));
    e[j] = 0.0;
    for (std::size_t i = 0; i < np; ++i) s(i, j) = col[i];
  }
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < i; ++j) s(i, j) = s(j, i) = 0.5 * (s(i, j) + s(j, i));

  linalg::DenseMatrix mp(np, np);
  const double h2 = grid.h() * grid.h();
  for (std::size_t i = 0; i < np; ++i) mp(i, i) = h2;

  const linalg::Deflation constants{{Vector(np, 1.0)}};
  const auto pair = linalg::smallest_generalized_eigenpair(
      s, mp, deflate_constants ? &constants : nullptr, options);

  qp::InfSupEstimate out;
  out.form = qp::InfSupForm::dual_form;
  out.eigenvalue = pair.value;
  out.beta = std::sqrt(std::max(pair.value, 0.0));
  out.residual = pair.residual;
  out.iterations = pair.iterations;
  out.attaining_q = pair.vector;
  qp::normalize_sign(out.attaining_q);
  return out;
}

}  // namespace lagrange::stokes
