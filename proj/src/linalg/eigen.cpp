#include "lagrange/linalg/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <string>

#include "lagrange/linalg/errors.hpp"

namespace lagrange::linalg {

namespace {

/// Gram-Schmidt (twice) in the M inner product against `fixed` (already
/// M-orthonormal, with M-images `fixed_m`) and then among `block`. Vectors
/// that collapse are replaced by fresh ones from `rng`. Products with M are
/// carried along so each vector costs one multiplication by M.
void m_orthonormalize(const DenseMatrix& m, const std::vector<Vector>& fixed,
                      const std::vector<Vector>& fixed_m, std::vector<Vector>& block,
                      std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<Vector> block_m(block.size());
  for (std::size_t j = 0; j < block.size(); ++j) {
    for (int attempt = 0;; ++attempt) {
      Vector& x = block[j];
      Vector mx = multiply(m, x);
      const double before = std::sqrt(std::max(dot(x, mx), 0.0));
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < fixed.size(); ++i) {
          const double c = dot(fixed_m[i], x);
          axpy(-c, fixed[i], x);
          axpy(-c, fixed_m[i], mx);
        }
        for (std::size_t i = 0; i < j; ++i) {
          const double c = dot(block_m[i], x);
          axpy(-c, block[i], x);
          axpy(-c, block_m[i], mx);
        }
      }
      mx = multiply(m, x);
      const double after = std::sqrt(std::max(dot(x, mx), 0.0));
      if (after > 1e-10 * before && after > 0.0) {
        x *= 1.0 / after;
        mx *= 1.0 / after;
        block_m[j] = std::move(mx);
        break;
      }
      if (attempt > 8) {
        throw ConvergenceError("smallest_generalized_eigenpair: cannot build an "
                               "M-orthonormal block (admissible subspace too small)");
      }
      for (double& v : x) v = normal(rng);
    }
  }
}

}  // namespace

GeneralizedEigenpair smallest_generalized_eigenpair(const DenseMatrix& s,
                                                    const DenseMatrix& m,
                                                    const Deflation* deflation,
                                                    const EigenOptions& options) {
  const std::size_t n = s.rows();
  if (s.cols() != n || m.rows() != n || m.cols() != n) {
    throw DimensionError("smallest_generalized_eigenpair: S and M must be square "
                         "and of equal size");
  }
  if (n == 0) throw InvalidArgument("smallest_generalized_eigenpair: empty pencil");
  try {
    CholeskyFactor check(m);
  } catch (const SingularSystemError&) {
    throw InvalidArgument("smallest_generalized_eigenpair: M is not positive definite");
  }

  std::mt19937_64 rng(0x5eedULL);
  std::vector<Vector> deflated;
  if (deflation) {
    deflated = deflation->basis;
    for (const Vector& w : deflated) require_size(w.size(), n, "deflation vector");
    m_orthonormalize(m, {}, {}, deflated, rng);
  }
  std::vector<Vector> deflated_m;
  for (const Vector& w : deflated) deflated_m.push_back(multiply(m, w));
  const std::size_t admissible = n - deflated.size();
  if (admissible == 0) {
    throw InvalidArgument("smallest_generalized_eigenpair: deflation removes "
                          "the whole space");
  }

  // S + (M W)(M W)^T moves the deflated directions to eigenvalue 1 of the
  // pencil and leaves the admissible eigenpairs untouched.
  DenseMatrix shifted = s;
  for (const Vector& mw : deflated_m) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) shifted(i, j) += mw[i] * mw[j];
  }
  std::unique_ptr<CholeskyFactor> factor;
  try {
    factor = std::make_unique<CholeskyFactor>(shifted);
  } catch (const SingularSystemError&) {
    // S singular on the admissible subspace: a tiny positive shift keeps the
    // solves defined; Rayleigh-Ritz below still uses the unshifted S.
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(s(i, i)) / m(i, i));
    const double sigma = 1e-10 * std::max(scale, 1e-300);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) shifted(i, j) += sigma * m(i, j);
    factor = std::make_unique<CholeskyFactor>(shifted);
  }

  const std::size_t p = std::max<std::size_t>(1, std::min(options.block_size, admissible));
  const std::size_t max_iter = options.max_iter ? options.max_iter : 10 * n;
  std::normal_distribution<double> normal;
  std::vector<Vector> block(p, Vector(n));
  for (Vector& x : block)
    for (double& v : x) v = normal(rng);
  m_orthonormalize(m, deflated, deflated_m, block, rng);

  GeneralizedEigenpair best;
  best.residual = INFINITY;
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    for (Vector& x : block) x = factor->solve(multiply(m, x));
    m_orthonormalize(m, deflated, deflated_m, block, rng);

    DenseMatrix h(p, p);
    std::vector<Vector> sx(p);
    for (std::size_t j = 0; j < p; ++j) sx[j] = multiply(s, block[j]);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j <= i; ++j) h(i, j) = h(j, i) = dot(block[i], sx[j]);
    const SymmetricEigensystem ritz = symmetric_eigensystem(h);

    std::vector<Vector> rotated(p, Vector(n));
    for (std::size_t k = 0; k < p; ++k)
      for (std::size_t j = 0; j < p; ++j) axpy(ritz.vectors(j, k), block[j], rotated[k]);
    block = std::move(rotated);

    const Vector& q = block[0];
    const double lambda = ritz.values[0];
    const Vector r = multiply(s, q) - lambda * multiply(m, q);
    const double rnorm = norm2(r);
    best = {lambda, q, rnorm, iter};
    if (rnorm <= options.tol * norm2(q)) return best;
  }
  throw ConvergenceError("smallest_generalized_eigenpair: residual " +
                         std::to_string(best.residual) + " above target after " +
                         std::to_string(max_iter) + " iterations");
}

GeneralizedEigenpair smallest_generalized_eigenpair(const SparseOperator& s,
                                                    const SparseOperator& m,
                                                    const Deflation* deflation,
                                                    const EigenOptions& options) {
  if (!s.has_exact_symmetry() || !m.has_exact_symmetry()) {
    throw InvalidArgument("smallest_generalized_eigenpair: operators must be symmetric");
  }
  return smallest_generalized_eigenpair(s.to_dense(), m.to_dense(), deflation, options);
}

}  // namespace lagrange::linalg
