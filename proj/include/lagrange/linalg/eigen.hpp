#pragma once

#include <cstddef>
#include <vector>

#include "lagrange/linalg/dense.hpp"
#include "lagrange/linalg/solvers.hpp"
#include "lagrange/linalg/sparse.hpp"
#include "lagrange/linalg/vector.hpp"

namespace lagrange::linalg {

/// Directions removed from the admissible subspace of a generalized
/// eigenproblem S q = lambda M q. The eigenpair is sought in the
/// M-orthogonal complement of span(basis). The span must be invariant under
/// the pencil, which holds in every use here because it lies in Ker S
/// (constant pressures, Ker C).
struct Deflation {
  std::vector<Vector> basis;
};

struct EigenOptions {
  double tol = kDefaultTol;     // residual target ||S q - lambda M q|| <= tol ||q||
  std::size_t max_iter = 0;     // 0 -> 10 * dimension
  std::size_t block_size = 8;
};

struct GeneralizedEigenpair {
  double value = 0.0;
  Vector vector;            // normalized so that q^T M q = 1
  double residual = 0.0;    // ||S q - value M q||
  std::size_t iterations = 0;
};

/// Smallest eigenpair of S q = lambda M q with S symmetric positive
/// semidefinite and M symmetric positive definite, restricted to the
/// complement of `deflation` when given.
///
/// Block inverse iteration with shift 0 and Rayleigh-Ritz in the M inner
/// product. Throws InvalidArgument for indefinite M and ConvergenceError when
/// the residual target is not reached within max_iter.
GeneralizedEigenpair smallest_generalized_eigenpair(
    const DenseMatrix& s, const DenseMatrix& m, const Deflation* deflation = nullptr,
    const EigenOptions& options = {});

GeneralizedEigenpair smallest_generalized_eigenpair(
    const SparseOperator& s, const SparseOperator& m,
    const Deflation* deflation = nullptr, const EigenOptions& options = {});

}  // namespace lagrange::linalg
