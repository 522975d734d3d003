#include "lagrange/stokes/operators.hpp"

#include <vector>

namespace lagrange::stokes {

using linalg::Symmetry;
using linalg::Triplet;

StokesOperators assemble_operators(const MacGrid& grid) {
  const std::size_t n = grid.n();
  const double h = grid.h();
  std::vector<Triplet> a;
  a.reserve(5 * grid.num_velocity());

  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t r = grid.u_index(i, j);
      double diag = 4.0;
      if (i > 1) a.push_back({r, grid.u_index(i - 1, j), -1.0});
      if (i + 1 < n) a.push_back({r, grid.u_index(i + 1, j), -1.0});
      if (j > 0) {
        a.push_back({r, grid.u_index(i, j - 1), -1.0});
      } else {
        diag += 1.0;
      }
      if (j + 1 < n) {
        a.push_back({r, grid.u_index(i, j + 1), -1.0});
      } else {
        diag += 1.0;
      }
      a.push_back({r, r, diag});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) {
      const std::size_t r = grid.v_index(i, j);
      double diag = 4.0;
      if (j > 1) a.push_back({r, grid.v_index(i, j - 1), -1.0});
      if (j + 1 < n) a.push_back({r, grid.v_index(i, j + 1), -1.0});
      if (i > 0) {
        a.push_back({r, grid.v_index(i - 1, j), -1.0});
      } else {
        diag += 1.0;
      }
      if (i + 1 < n) {
        a.push_back({r, grid.v_index(i + 1, j), -1.0});
      } else {
        diag += 1.0;
      }
      a.push_back({r, r, diag});
    }
  }

  std::vector<Triplet> b;
  b.reserve(4 * grid.num_pressure());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t c = grid.p_index(i, j);
      if (i + 1 < n) b.push_back({c, grid.u_index(i + 1, j), h});
      if (i > 0) b.push_back({c, grid.u_index(i, j), -h});
      if (j + 1 < n) b.push_back({c, grid.v_index(i, j + 1), h});
      if (j > 0) b.push_back({c, grid.v_index(i, j), -h});
    }
  }

  const std::size_t nu = grid.num_velocity();
  const std::size_t np = grid.num_pressure();
  return {SparseOperator::from_triplets(nu, nu, std::move(a), Symmetry::symmetric),
          SparseOperator::from_triplets(np, nu, std::move(b)),
          SparseOperator::diagonal(Vector(np, h * h))};
}

}  // namespace lagrange::stokes
