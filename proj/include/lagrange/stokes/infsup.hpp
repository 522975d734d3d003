#pragma once

#include "lagrange/linalg/eigen.hpp"
#include "lagrange/qp/infsup.hpp"
#include "lagrange/stokes/grid.hpp"

namespace lagrange::stokes {

/// beta(h) = sqrt(lambda_min(B A^-1 B^T, Mp)) over zero-mean pressures.
/// With deflate_constants = false the constant pressure is admissible and
/// the smallest eigenvalue is zero.
qp::InfSupEstimate estimate_infsup_stokes(const MacGrid& grid, bool deflate_constants = true,
                                          const linalg::EigenOptions& options = {});

}  // namespace lagrange::stokes
