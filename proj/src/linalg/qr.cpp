#include "lagrange/linalg/qr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lagrange/linalg/errors.hpp"

namespace lagrange::linalg {

namespace {

std::vector<Vector> rows_of(const SparseOperator& c) {
  std::vector<Vector> rows(c.rows(), Vector(c.cols()));
  const auto rp = c.row_ptr();
  const auto ci = c.col_idx();
  const auto val = c.values();
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) rows[i][ci[k]] = val[k];
  return rows;
}

std::vector<Vector> rows_of(const DenseMatrix& c) {
  std::vector<Vector> rows(c.rows(), Vector(c.cols()));
  for (std::size_t i = 0; i < c.rows(); ++i)
    std::copy(c.row(i), c.row(i) + c.cols(), rows[i].begin());
  return rows;
}

}  // namespace

PivotedQr::PivotedQr(const SparseOperator& c, double rank_tol)
    : m_(c.rows()), n_(c.cols()) {
  factor(rows_of(c), rank_tol);
}

PivotedQr::PivotedQr(const DenseMatrix& c, double rank_tol)
    : m_(c.rows()), n_(c.cols()) {
  factor(rows_of(c), rank_tol);
}

void PivotedQr::factor(std::vector<Vector> cols, double rank_tol) {
  for (const Vector& col : cols) require_finite(col, "PivotedQr input");
  const std::size_t m = m_;
  const std::size_t n = n_;
  perm_.resize(m);
  for (std::size_t i = 0; i < m; ++i) perm_[i] = i;

  std::vector<double> norms(m);
  for (std::size_t j = 0; j < m; ++j) norms[j] = norm2(cols[j]);

  const std::size_t steps = std::min(m, n);
  std::size_t k = 0;
  for (; k < steps; ++k) {
    // Recompute trailing norms exactly; downdating loses accuracy and the
    // factorization is desk-scale.
    std::size_t piv = k;
    double best = -1.0;
    for (std::size_t j = k; j < m; ++j) {
      double s = 0.0;
      const double* cj = cols[j].data();
      for (std::size_t i = k; i < n; ++i) s += cj[i] * cj[i];
      norms[j] = std::sqrt(s);
      if (norms[j] > best) {
        best = norms[j];
        piv = j;
      }
    }
    if (k == 0) largest_ = best;
    if (best <= rank_tol * largest_ || best == 0.0) break;
    if (piv != k) {
      std::swap(cols[piv], cols[k]);
      std::swap(perm_[piv], perm_[k]);
    }

    Vector v(n);
    double* ck = cols[k].data();
    const double alpha = ck[k] >= 0.0 ? -best : best;
    for (std::size_t i = k; i < n; ++i) v[i] = ck[i];
    v[k] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) vnorm2 += v[i] * v[i];
    const double beta = vnorm2 > 0.0 ? 2.0 / vnorm2 : 0.0;
    for (std::size_t i = k; i < n; ++i) ck[i] = 0.0;
    ck[k] = alpha;

    for (std::size_t j = k + 1; j < m; ++j) {
      double* cj = cols[j].data();
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += v[i] * cj[i];
      s *= beta;
      if (s != 0.0)
        for (std::size_t i = k; i < n; ++i) cj[i] -= s * v[i];
    }
    reflectors_.push_back(std::move(v));
    betas_.push_back(beta);
    smallest_ = best;
  }
  rank_ = k;

  r_ = DenseMatrix(rank_, rank_);
  for (std::size_t j = 0; j < rank_; ++j)
    for (std::size_t i = 0; i <= j; ++i) r_(i, j) = cols[j][i];
  if (rank_ > 0) smallest_ = std::fabs(r_(rank_ - 1, rank_ - 1));
}

Vector PivotedQr::apply_qt(const Vector& g) const {
  require_size(g.size(), n_, "PivotedQr::apply_qt");
  Vector y(g);
  for (std::size_t k = 0; k < reflectors_.size(); ++k) {
    const Vector& v = reflectors_[k];
    double s = 0.0;
    for (std::size_t i = k; i < n_; ++i) s += v[i] * y[i];
    s *= betas_[k];
    for (std::size_t i = k; i < n_; ++i) y[i] -= s * v[i];
  }
  return y;
}

Vector PivotedQr::apply_q(const Vector& z) const {
  require_size(z.size(), n_, "PivotedQr::apply_q");
  Vector y(z);
  for (std::size_t k = reflectors_.size(); k-- > 0;) {
    const Vector& v = reflectors_[k];
    double s = 0.0;
    for (std::size_t i = k; i < n_; ++i) s += v[i] * y[i];
    s *= betas_[k];
    for (std::size_t i = k; i < n_; ++i) y[i] -= s * v[i];
  }
  return y;
}

std::vector<Vector> PivotedQr::kernel_basis() const {
  std::vector<Vector> basis;
  basis.reserve(n_ - rank_);
  for (std::size_t k = rank_; k < n_; ++k) {
    Vector e(n_);
    e[k] = 1.0;
    basis.push_back(apply_q(e));
  }
  return basis;
}

double PivotedQr::kernel_component_norm(const Vector& g) const {
  const Vector y = apply_qt(g);
  return norm2(slice(y, rank_, n_ - rank_));
}

void PivotedQr::require_full_rank(const char* what) const {
  if (!full_row_rank()) {
    throw RankDeficientError(std::string(what) + ": constraint operator has rank " +
                                 std::to_string(rank_) + " < " + std::to_string(m_),
                             rank_, m_);
  }
}

Vector PivotedQr::min_norm_solution(const Vector& d) const {
  require_full_rank("min_norm_solution");
  require_size(d.size(), m_, "min_norm_solution rhs");
  // C = P R^T Q^T, so R^T (Q^T x)_{0:M} = P^T d and the rest of Q^T x is 0.
  Vector y(n_);
  for (std::size_t i = 0; i < m_; ++i) {
    double s = d[perm_[i]];
    for (std::size_t k = 0; k < i; ++k) s -= r_(k, i) * y[k];
    y[i] = s / r_(i, i);
  }
  return apply_q(y);
}

Vector PivotedQr::least_squares_transpose(const Vector& g) const {
  require_full_rank("least_squares_transpose");
  const Vector y = apply_qt(g);
  // R (P^T lambda) = (Q^T g)_{0:M}
  Vector z(m_);
  for (std::size_t i = m_; i-- > 0;) {
    double s = y[i];
    for (std::size_t k = i + 1; k < m_; ++k) s -= r_(i, k) * z[k];
    z[i] = s / r_(i, i);
  }
  Vector lambda(m_);
  for (std::size_t i = 0; i < m_; ++i) lambda[perm_[i]] = z[i];
  return lambda;
}

std::vector<Vector> orthonormal_nullspace_basis(const SparseOperator& c,
                                                double rank_tol) {
  const PivotedQr qr(c, rank_tol);
  if (!qr.full_row_rank()) {
    throw RankDeficientError(
        "orthonormal_nullspace_basis: operator is rank deficient (numerical rank " +
            std::to_string(qr.rank()) + " of " + std::to_string(c.rows()) + " rows)",
        qr.rank(), c.rows());
  }
  return qr.kernel_basis();
}

std::vector<Vector> numerical_kernel(const DenseMatrix& c, double rank_tol) {
  return PivotedQr(c, rank_tol).kernel_basis();
}

}  // namespace lagrange::linalg
