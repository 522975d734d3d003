#include <doctest.h>

#include <cmath>

#include "lagrange/linalg/eigen.hpp"
#include "lagrange/linalg/errors.hpp"
#include "test_support.hpp"

using namespace lagrange;
using namespace lagrange::linalg;
using namespace lagrange::testing;

TEST_CASE("generalized eigenpair: diagonal spectrum") {
  const auto s = SparseOperator::diagonal(Vector{1, 4});
  const auto pair = smallest_generalized_eigenpair(s, SparseOperator::identity(2));
  CHECK(pair.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(std::fabs(pair.vector[0]) - 1.0) <= 1e-10);
  CHECK(std::fabs(pair.vector[1]) <= 1e-10);
}

TEST_CASE("generalized eigenpair: identical operators give lambda = 1") {
  std::mt19937_64 rng(2);
  const auto m = sparse_from_eigen(random_spd(rng, 6), Symmetry::symmetric);
  const auto pair = smallest_generalized_eigenpair(m, m);
  CHECK(pair.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pair.residual <= 1e-8 * norm2(pair.vector));
}

TEST_CASE("generalized eigenpair: random pairs against a dense full-spectrum oracle") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 15;
    const Eigen::MatrixXd g = random_matrix(rng, n, n - 3);
    const Eigen::MatrixXd se = symmetrize(g * g.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n));
    const Eigen::MatrixXd me = random_spd(rng, n);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> oracle(se, me);
    const double lambda_min = oracle.eigenvalues()(0);

    const auto s = sparse_from_eigen(se, Symmetry::symmetric);
    const auto m = sparse_from_eigen(me, Symmetry::symmetric);
    const auto pair = smallest_generalized_eigenpair(s, m);
    CHECK(std::fabs(pair.value - lambda_min) <= 1e-8 * std::max(1.0, lambda_min));
    const Vector r = apply(s, pair.vector) - pair.value * apply(m, pair.vector);
    CHECK(norm2(r) <= 1e-8 * norm2(pair.vector));
    CHECK(dot(pair.vector, apply(m, pair.vector)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("generalized eigenpair: deflating a kernel direction") {
  // S = L (path-graph Laplacian) has the constant vector in its kernel.
  const std::size_t n = 12;
  std::vector<Triplet> t;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    t.push_back({i, i, 1.0});
    t.push_back({i + 1, i + 1, 1.0});
    t.push_back({i, i + 1, -1.0});
    t.push_back({i + 1, i, -1.0});
  }
  const auto s = SparseOperator::from_triplets(n, n, t, Symmetry::symmetric);
  const auto m = SparseOperator::identity(n);

  const auto raw = smallest_generalized_eigenpair(s, m);
  CHECK(std::fabs(raw.value) <= 1e-10);

  const Deflation constants{{Vector(n, 1.0)}};
  const auto pair = smallest_generalized_eigenpair(s, m, &constants);
  const double fiedler = 2.0 - 2.0 * std::cos(M_PI / static_cast<double>(n));
  CHECK(pair.value == doctest::Approx(fiedler).epsilon(1e-10));
  CHECK(std::fabs(sum(pair.vector)) <= 1e-10);
}

TEST_CASE("generalized eigenpair: indefinite M is rejected") {
  CHECK_THROWS_AS(smallest_generalized_eigenpair(SparseOperator::identity(2),
                                                 SparseOperator::diagonal(Vector{1, -1})),
                  InvalidArgument);
}
