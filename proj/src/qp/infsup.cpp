#include "lagrange/qp/infsup.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lagrange/linalg/dense.hpp"
#include "lagrange/linalg/errors.hpp"
#include "lagrange/linalg/qr.hpp"

namespace lagrange::qp {

using linalg::CholeskyFactor;
using linalg::DenseMatrix;

namespace {

CholeskyFactor factor_spd(const SparseOperator& op, const char* name) {
  if (op.rows() != op.cols() || !op.has_exact_symmetry()) {
    throw InvalidArgument(std::string("estimate_infsup: ") + name + " must be square symmetric");
  }
  try {
    return CholeskyFactor(op.to_dense());
  } catch (const SingularSystemError&) {
    throw InvalidArgument(std::string("estimate_infsup: ") + name +
                          " is not positive definite");
  }
}

/// Gram matrix W^T W of the columns w_j = L^{-1} (column j of `rhs`), i.e.
/// rhs^T F^{-1} rhs for F = L L^T.
DenseMatrix congruence(const CholeskyFactor& factor, const DenseMatrix& rhs) {
  const std::size_t k = rhs.cols();
  std::vector<Vector> w(k);
  for (std::size_t j = 0; j < k; ++j) w[j] = factor.solve_lower(rhs.column(j));
  DenseMatrix s(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= i; ++j) s(i, j) = s(j, i) = linalg::dot(w[i], w[j]);
  return s;
}

}  // namespace

std::string_view to_string(InfSupForm form) {
  return form == InfSupForm::dual_form ? "dual_form" : "primal_form";
}

std::optional<InfSupForm> parse_infsup_form(std::string_view name) {
  if (name == "dual_form" || name == "dual") return InfSupForm::dual_form;
  if (name == "primal_form" || name == "primal") return InfSupForm::primal_form;
  return std::nullopt;
}

void normalize_sign(Vector& v) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::fabs(v[i]) > std::fabs(v[arg]) + 1e-12 * std::fabs(v[arg])) arg = i;
  if (!v.empty() && v[arg] < 0.0) v *= -1.0;
}

InfSupEstimate estimate_infsup(const SparseOperator& c, const SparseOperator& a,
                               const SparseOperator& mq, InfSupForm form,
                               const linalg::EigenOptions& options) {
  const std::size_t m = c.rows();
  const std::size_t n = c.cols();
  linalg::require_size(a.rows(), n, "estimate_infsup: A rows");
  linalg::require_size(mq.rows(), m, "estimate_infsup: Mq rows");
  if (m == 0) throw InvalidArgument("estimate_infsup: constraint operator has no rows");

  const CholeskyFactor a_factor = factor_spd(a, "A");
  const CholeskyFactor m_factor = factor_spd(mq, "Mq");
  const DenseMatrix c_dense = c.to_dense();

  InfSupEstimate out;
  out.form = form;
  if (form == InfSupForm::dual_form) {
    // S = C A^-1 C^T on the pressure side, deflating Ker C^T.
    const DenseMatrix s = congruence(a_factor, c_dense.transpose());
    const linalg::Deflation deflation{linalg::numerical_kernel(c_dense.transpose())};
    const auto pair = linalg::smallest_generalized_eigenpair(
        s, mq.to_dense(), deflation.basis.empty() ? nullptr : &deflation, options);
    out.eigenvalue = pair.value;
    out.residual = pair.residual;
    out.iterations = pair.iterations;
    out.attaining_q = pair.vector;
  } else {
    // S = C^T Mq^-1 C on the velocity side, deflating Ker C.
    const DenseMatrix s = congruence(m_factor, c_dense);
    const linalg::Deflation deflation{linalg::numerical_kernel(c_dense)};
    const auto pair = linalg::smallest_generalized_eigenpair(
        s, a.to_dense(), deflation.basis.empty() ? nullptr : &deflation, options);
    out.eigenvalue = pair.value;
    out.residual = pair.residual;
    out.iterations = pair.iterations;
    // The attaining pressure is the Riesz representative Mq^-1 C v, scaled
    // to unit M-norm (its M-norm squared is the eigenvalue).
    Vector q = m_factor.solve(linalg::multiply(c_dense, pair.vector));
    const double qnorm = std::sqrt(std::max(linalg::dot(q, linalg::apply(mq, q)), 0.0));
    if (qnorm > 0.0) q *= 1.0 / qnorm;
    out.attaining_q = std::move(q);
  }
  out.beta = std::sqrt(std::max(out.eigenvalue, 0.0));
  normalize_sign(out.attaining_q);
  return out;
}

}  // namespace lagrange::qp
