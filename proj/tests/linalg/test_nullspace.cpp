#include <doctest.h>

#include <cmath>

#include "lagrange/linalg/errors.hpp"
#include "lagrange/linalg/qr.hpp"
#include "test_support.hpp"

using namespace lagrange;
using namespace lagrange::linalg;
using namespace lagrange::testing;

TEST_CASE("nullspace: coordinate hyperplane and trivial kernel") {
  const auto c = SparseOperator::from_triplets(1, 2, {{0, 0, 1.0}});
  const auto z = orthonormal_nullspace_basis(c);
  REQUIRE(z.size() == 1);
  CHECK(std::fabs(z[0][0]) <= 1e-16);
  CHECK(std::fabs(std::fabs(z[0][1]) - 1.0) <= 1e-15);

  CHECK(orthonormal_nullspace_basis(SparseOperator::identity(2)).empty());
}

TEST_CASE("nullspace: random full-rank C against an SVD oracle") {
  std::mt19937_64 rng(37);
  for (auto [m, n] : {std::pair{3, 7}, std::pair{8, 30}, std::pair{1, 5}, std::pair{19, 20}}) {
    const Eigen::MatrixXd ce = random_matrix(rng, m, n);
    const auto c = sparse_from_eigen(ce);
    const auto z = orthonormal_nullspace_basis(c);
    REQUIRE(z.size() == static_cast<std::size_t>(n - m));

    Eigen::MatrixXd ze(n, n - m);
    for (int k = 0; k < n - m; ++k) ze.col(k) = to_eigen(z[k]);
    const double cnorm = ce.norm();
    CHECK((ce * ze).cwiseAbs().maxCoeff() <= 1e-12 * cnorm);
    CHECK((ze.transpose() * ze - Eigen::MatrixXd::Identity(n - m, n - m)).cwiseAbs().maxCoeff() <=
          1e-12);

    // span(Z) = Ker C: projectors onto the SVD kernel and onto span(Z) agree.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ce, Eigen::ComputeFullV);
    const Eigen::MatrixXd v_ker = svd.matrixV().rightCols(n - m);
    CHECK((v_ker * v_ker.transpose() - ze * ze.transpose()).norm() <= 1e-11);
  }
}

TEST_CASE("nullspace: rank deficiency is rejected") {
  // Third row is the sum of the first two.
  const auto c = SparseOperator::from_triplets(
      3, 4, {{0, 0, 1}, {0, 1, 2}, {1, 2, 1}, {1, 3, -1}, {2, 0, 1}, {2, 1, 2}, {2, 2, 1}, {2, 3, -1}});
  try {
    orthonormal_nullspace_basis(c);
    FAIL("expected RankDeficientError");
  } catch (const RankDeficientError& e) {
    CHECK(e.rank() == 2);
    CHECK(e.expected_rank() == 3);
  }
  CHECK(numerical_kernel(c.to_dense()).size() == 2);
}

TEST_CASE("PivotedQr: minimum-norm solution and transpose least squares") {
  std::mt19937_64 rng(5);
  const int m = 4, n = 9;
  const Eigen::MatrixXd ce = random_matrix(rng, m, n);
  const PivotedQr qr(sparse_from_eigen(ce));
  const Vector d = random_vector(rng, m);
  const Eigen::VectorXd x_oracle = ce.completeOrthogonalDecomposition().solve(to_eigen(d));
  CHECK((to_eigen(qr.min_norm_solution(d)) - x_oracle).norm() <= 1e-12 * x_oracle.norm());

  const Vector g = random_vector(rng, n);
  const Eigen::VectorXd l_oracle =
      ce.transpose().colPivHouseholderQr().solve(to_eigen(g));
  CHECK((to_eigen(qr.least_squares_transpose(g)) - l_oracle).norm() <= 1e-12 * l_oracle.norm());

  const Eigen::VectorXd resid = ce.transpose() * l_oracle - to_eigen(g);
  CHECK(std::fabs(qr.kernel_component_norm(g) - resid.norm()) <= 1e-12 * to_eigen(g).norm());
}
