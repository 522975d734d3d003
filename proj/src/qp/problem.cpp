#include "lagrange/qp/problem.hpp"

#include <random>
#include <string>

#include "lagrange/linalg/errors.hpp"

namespace lagrange::qp {

namespace {

void validate_quadratic_form(const SparseOperator& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("QpProblem: A must be square, got " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()));
  }
  if (!a.is_symmetric() && !a.has_exact_symmetry()) {
    throw InvalidArgument("QpProblem: A must be symmetric");
  }
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a.at(i, i) > 0.0)) {
      throw InvalidArgument("QpProblem: A is not positive definite (diagonal entry " +
                            std::to_string(i) + " is not positive)");
    }
  }
  // Spot check x^T A x > 0 on a few deterministic random directions.
  std::mt19937_64 rng(0xA5A5ULL);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 8; ++trial) {
    Vector x(n);
    for (double& v : x) v = normal(rng);
    if (!(linalg::dot(x, linalg::apply(a, x)) > 0.0)) {
      throw InvalidArgument("QpProblem: A is not positive definite (x^T A x <= 0 on a probe)");
    }
  }
}

}  // namespace

QpProblem::QpProblem(SparseOperator a, Vector b, SparseOperator c)
    : QpProblem(std::move(a), std::move(b), std::move(c), Vector()) {}

QpProblem::QpProblem(SparseOperator a, Vector b, SparseOperator c, Vector d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  validate_quadratic_form(a_);
  const std::size_t n = a_.rows();
  const std::size_t m = c_.rows();
  if (d_.empty() && m > 0) d_ = Vector(m);
  linalg::require_size(b_.size(), n, "QpProblem linear term b");
  linalg::require_size(c_.cols(), n, "QpProblem constraint columns");
  linalg::require_size(d_.size(), m, "QpProblem constraint right-hand side d");
  linalg::require_finite(b_, "QpProblem b");
  linalg::require_finite(d_, "QpProblem d");
  if (m >= n) {
    throw InvalidArgument("QpProblem: need fewer constraints than variables (M = " +
                          std::to_string(m) + ", N = " + std::to_string(n) + ")");
  }
  a_frobenius_ = a_.frobenius_norm();
  if (m > 0) {
    auto qr = std::make_shared<const linalg::PivotedQr>(c_);
    if (!qr->full_row_rank()) {
      throw RankDeficientError(
          "QpProblem: C is rank deficient (numerical rank " + std::to_string(qr->rank()) +
              " of " + std::to_string(m) +
              " rows); the multiplier would not be unique",
          qr->rank(), m);
    }
    qr_ = std::move(qr);
  }
}

QpProblem QpProblem::with_linear_term(Vector b) const {
  linalg::require_size(b.size(), num_variables(), "QpProblem linear term b");
  linalg::require_finite(b, "QpProblem b");
  QpProblem copy = *this;
  copy.b_ = std::move(b);
  return copy;
}

double QpProblem::scale(const Vector& x) const {
  return a_frobenius_ * linalg::norm2(x) + linalg::norm2(b_);
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::direct: return "direct";
    case Method::nullspace: return "nullspace";
    case Method::schur: return "schur";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "direct") return Method::direct;
  if (name == "nullspace") return Method::nullspace;
  if (name == "schur") return Method::schur;
  return std::nullopt;
}

Vector gradient(const QpProblem& problem, const Vector& x) {
  linalg::require_size(x.size(), problem.num_variables(), "gradient");
  return linalg::apply(problem.A(), x) - problem.b();
}

double objective(const QpProblem& problem, const Vector& x) {
  linalg::require_size(x.size(), problem.num_variables(), "objective");
  return 0.5 * linalg::dot(x, linalg::apply(problem.A(), x)) - linalg::dot(problem.b(), x);
}

void compute_residuals(const QpProblem& problem, SaddleSolution& s) {
  Vector stationarity = gradient(problem, s.x);
  if (problem.num_constraints() > 0) {
    stationarity -= linalg::apply_transpose(problem.C(), s.lambda);
    s.residual_feasibility = linalg::norm2(linalg::apply(problem.C(), s.x) - problem.d());
  } else {
    s.residual_feasibility = 0.0;
  }
  s.residual_stationarity = linalg::norm2(stationarity);
}

}  // namespace lagrange::qp
