#pragma once

#include "lagrange/linalg/sparse.hpp"
#include "lagrange/stokes/grid.hpp"

namespace lagrange::stokes {

using linalg::SparseOperator;

/// A: 5-point Laplacian per component times h^2, so u^T A v ~ int grad u : grad v.
///    Wall-normal neighbours are the Dirichlet zero; wall-tangential
///    neighbours are ghosts reflected with a sign flip, which adds 1 to the
///    diagonal.
/// B: cell divergence times h^2, so q^T B v ~ int q div v. -B^T is the
///    discrete gradient scaled by h^2.
/// Mp: h^2 per cell.
struct StokesOperators {
  SparseOperator A;
  SparseOperator B;
  SparseOperator Mp;
};

StokesOperators assemble_operators(const MacGrid& grid);

}  // namespace lagrange::stokes
