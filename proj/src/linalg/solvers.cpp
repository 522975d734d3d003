#include "lagrange/linalg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lagrange/linalg/errors.hpp"

namespace lagrange::linalg {

SolveResult conjugate_gradient(const SparseOperator& op, const Vector& b,
                               double tol, std::size_t max_iter) {
  if (op.rows() != op.cols()) {
    throw DimensionError("conjugate_gradient: operator is not square");
  }
  return conjugate_gradient([&op](const Vector& v) { return apply(op, v); },
                            op.rows(), b, tol, max_iter);
}

SolveResult conjugate_gradient(const LinearMap& op, std::size_t dim,
                               const Vector& b, double tol,
                               std::size_t max_iter) {
  require_size(b.size(), dim, "conjugate_gradient rhs");
  require_finite(b, "conjugate_gradient rhs");
  if (!(tol > 0.0)) throw InvalidArgument("conjugate_gradient: tol must be > 0");
  if (max_iter == 0) max_iter = std::max<std::size_t>(10 * dim, 1);

  SolveResult out{Vector(dim), {}};
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    out.report.converged = true;
    return out;
  }

  const double target = tol * bnorm;
  Vector r = b;
  std::size_t k = 0;
  double true_norm = bnorm;
  // The recursively updated residual drifts from b - op(x); when it claims
  // convergence the true residual is checked and the iteration restarted
  // from it a bounded number of times.
  for (int restart = 0; restart < 4; ++restart) {
    Vector p = r;
    double rr = dot(r, r);
    while (k < max_iter && std::sqrt(rr) > target) {
      const Vector q = op(p);
      const double curvature = dot(p, q);
      if (!(curvature > 0.0)) {
        out.report.breakdown_reason =
            "non-positive curvature p^T A p = " + std::to_string(curvature) +
            " at iteration " + std::to_string(k) + " (operator not positive definite)";
        break;
      }
      const double alpha = rr / curvature;
      axpy(alpha, p, out.x);
      axpy(-alpha, q, r);
      const double rr_new = dot(r, r);
      const double beta = rr_new / rr;
      rr = rr_new;
      for (std::size_t i = 0; i < dim; ++i) p[i] = r[i] + beta * p[i];
      ++k;
    }
    r = b - op(out.x);
    true_norm = norm2(r);
    if (out.report.breakdown_reason || k >= max_iter || true_norm <= target) break;
  }
  out.report.iterations = k;
  out.report.residual_norm = true_norm / bnorm;
  out.report.converged = !out.report.breakdown_reason && out.report.residual_norm <= tol;
  if (!out.report.converged && !out.report.breakdown_reason) {
    out.report.breakdown_reason = k >= max_iter ? "max_iter reached" : "residual stagnated";
  }
  return out;
}

BunchKaufmanFactor::BunchKaufmanFactor(const SparseOperator& symmetric_op)
    : BunchKaufmanFactor(symmetric_op.to_dense()) {
  if (!symmetric_op.is_symmetric() && !symmetric_op.has_exact_symmetry()) {
    throw InvalidArgument("Bunch-Kaufman factorization requires a symmetric operator");
  }
}

BunchKaufmanFactor::BunchKaufmanFactor(DenseMatrix symmetric)
    : n_(symmetric.rows()), a_(std::move(symmetric)) {
  if (a_.rows() != a_.cols()) {
    throw DimensionError("Bunch-Kaufman factorization of a non-square matrix");
  }
  factor();
}

void BunchKaufmanFactor::factor() {
  const std::size_t n = n_;
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  block_.assign(n, 1);

  DenseMatrix& a = a_;
  double amax = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) amax = std::max(amax, std::fabs(a(i, j)));
  const double singular_tol =
      static_cast<double>(std::max<std::size_t>(n, 1)) *
      std::numeric_limits<double>::epsilon() * amax;
  const double alpha = (1.0 + std::sqrt(17.0)) / 8.0;

  // Symmetric interchange of rows/columns p < q, acting on the lower
  // triangle of the trailing block and on the rows of L already computed.
  auto interchange = [&](std::size_t p, std::size_t q) {
    if (p == q) return;
    for (std::size_t j = 0; j < p; ++j) std::swap(a(p, j), a(q, j));
    std::swap(a(p, p), a(q, q));
    for (std::size_t j = p + 1; j < q; ++j) std::swap(a(j, p), a(q, j));
    for (std::size_t j = q + 1; j < n; ++j) std::swap(a(j, p), a(j, q));
    std::swap(perm_[p], perm_[q]);
  };

  std::vector<double> w1(n);
  std::vector<double> w2(n);
  std::size_t k = 0;
  while (k < n) {
    const double absakk = std::fabs(a(k, k));
    std::size_t imax = k;
    double colmax = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(a(i, k)) > colmax) {
        colmax = std::fabs(a(i, k));
        imax = i;
      }
    }
    if (std::max(absakk, colmax) <= singular_tol) {
      throw SingularSystemError(
          "symmetric_indefinite_solve: singular system, pivot " +
              std::to_string(k) + " (original row " + std::to_string(perm_[k]) +
              ") has magnitude " + std::to_string(std::max(absakk, colmax)),
          perm_[k]);
    }

    std::size_t size = 1;
    if (absakk < alpha * colmax) {
      double rowmax = 0.0;
      for (std::size_t j = k; j < imax; ++j) rowmax = std::max(rowmax, std::fabs(a(imax, j)));
      for (std::size_t j = imax + 1; j < n; ++j) rowmax = std::max(rowmax, std::fabs(a(j, imax)));
      if (absakk * rowmax >= alpha * colmax * colmax) {
        // keep a(k,k)
      } else if (std::fabs(a(imax, imax)) >= alpha * rowmax) {
        interchange(k, imax);
      } else {
        size = 2;
        interchange(k + 1, imax);
      }
    }

    if (size == 1) {
      const double d = a(k, k);
      if (std::fabs(d) <= singular_tol) {
        throw SingularSystemError(
            "symmetric_indefinite_solve: singular system, 1x1 pivot " +
                std::to_string(k) + " (original row " + std::to_string(perm_[k]) + ") vanishes",
            perm_[k]);
      }
      for (std::size_t i = k + 1; i < n; ++i) w1[i] = a(i, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        const double li = w1[i] / d;
        if (li != 0.0) {
          double* ai = a.row(i);
          for (std::size_t j = k + 1; j <= i; ++j) ai[j] -= li * w1[j];
        }
        a(i, k) = li;
      }
    } else {
      const double d11 = a(k, k);
      const double d21 = a(k + 1, k);
      const double d22 = a(k + 1, k + 1);
      const double det = d11 * d22 - d21 * d21;
      if (std::fabs(det) <= singular_tol * std::fabs(d21)) {
        throw SingularSystemError(
            "symmetric_indefinite_solve: singular system, 2x2 pivot block at " +
                std::to_string(k) + " (original rows " + std::to_string(perm_[k]) +
                ", " + std::to_string(perm_[k + 1]) + ") is singular",
            perm_[k]);
      }
      block_[k] = block_[k + 1] = 2;
      for (std::size_t i = k + 2; i < n; ++i) {
        w1[i] = a(i, k);
        w2[i] = a(i, k + 1);
      }
      for (std::size_t i = k + 2; i < n; ++i) {
        const double l1 = (d22 * w1[i] - d21 * w2[i]) / det;
        const double l2 = (d11 * w2[i] - d21 * w1[i]) / det;
        double* ai = a.row(i);
        for (std::size_t j = k + 2; j <= i; ++j) ai[j] -= l1 * w1[j] + l2 * w2[j];
        a(i, k) = l1;
        a(i, k + 1) = l2;
      }
    }
    k += size;
  }
}

Vector BunchKaufmanFactor::solve(const Vector& b) const {
  require_size(b.size(), n_, "Bunch-Kaufman solve");
  const DenseMatrix& a = a_;
  Vector y(n_);
  for (std::size_t i = 0; i < n_; ++i) y[i] = b[perm_[i]];

  // L z = y (unit lower; 2x2 blocks have no in-block multiplier)
  for (std::size_t k = 0; k < n_;) {
    const std::size_t s = block_[k];
    for (std::size_t c = k; c < k + s; ++c) {
      const double yc = y[c];
      if (yc == 0.0) continue;
      for (std::size_t i = k + s; i < n_; ++i) y[i] -= a(i, c) * yc;
    }
    k += s;
  }
  // D w = z
  for (std::size_t k = 0; k < n_;) {
    if (block_[k] == 1) {
      y[k] /= a(k, k);
      k += 1;
    } else {
      const double d11 = a(k, k);
      const double d21 = a(k + 1, k);
      const double d22 = a(k + 1, k + 1);
      const double det = d11 * d22 - d21 * d21;
      const double z1 = y[k];
      const double z2 = y[k + 1];
      y[k] = (d22 * z1 - d21 * z2) / det;
      y[k + 1] = (d11 * z2 - d21 * z1) / det;
      k += 2;
    }
  }
  // L^T v = w, walking the blocks backwards
  std::size_t k = n_;
  while (k > 0) {
    const std::size_t s = (k >= 2 && block_[k - 1] == 2) ? 2 : 1;
    const std::size_t start = k - s;
    for (std::size_t c = start; c < k; ++c) {
      double acc = y[c];
      for (std::size_t i = k; i < n_; ++i) acc -= a(i, c) * y[i];
      y[c] = acc;
    }
    k = start;
  }
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = y[i];
  return x;
}

std::size_t BunchKaufmanFactor::negative_eigenvalues() const {
  std::size_t neg = 0;
  for (std::size_t k = 0; k < n_;) {
    if (block_[k] == 1) {
      if (a_(k, k) < 0.0) ++neg;
      k += 1;
    } else {
      const double d11 = a_(k, k);
      const double d21 = a_(k + 1, k);
      const double d22 = a_(k + 1, k + 1);
      const double det = d11 * d22 - d21 * d21;
      if (det < 0.0) {
        neg += 1;
      } else if (d11 + d22 < 0.0) {
        neg += 2;
      }
      k += 2;
    }
  }
  return neg;
}

SolveResult symmetric_indefinite_solve(const SparseOperator& op, const Vector& b) {
  if (op.rows() != op.cols()) {
    throw DimensionError("symmetric_indefinite_solve: operator is not square");
  }
  require_size(b.size(), op.rows(), "symmetric_indefinite_solve rhs");
  require_finite(b, "symmetric_indefinite_solve rhs");
  const BunchKaufmanFactor factor(op);

  SolveResult out{factor.solve(b), {}};
  const double op_norm = op.frobenius_norm();
  const double bnorm = norm2(b);
  Vector r = b - apply(op, out.x);
  double rnorm = norm2(r);
  // A few steps of iterative refinement tighten the backward error.
  for (int step = 0; step < 3; ++step) {
    if (rnorm <= 1e-14 * (op_norm * norm2(out.x) + bnorm)) break;
    Vector candidate = out.x + factor.solve(r);
    Vector r_candidate = b - apply(op, candidate);
    const double rn_candidate = norm2(r_candidate);
    if (!(rn_candidate < rnorm)) break;
    out.x = std::move(candidate);
    r = std::move(r_candidate);
    rnorm = rn_candidate;
    ++out.report.iterations;
  }
  out.report.residual_norm = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  out.report.converged = rnorm <= 1e-10 * (op_norm * norm2(out.x) + bnorm);
  if (!out.report.converged) {
    out.report.breakdown_reason = "backward error bound not met after refinement";
  }
  return out;
}

EnvelopeCholesky::EnvelopeCholesky(const SparseOperator& spd) {
  if (spd.rows() != spd.cols()) {
    throw DimensionError("EnvelopeCholesky: operator is not square");
  }
  const std::size_t n = spd.rows();
  const auto rp = spd.row_ptr();
  const auto ci = spd.col_idx();
  const auto val = spd.values();

  first_.resize(n);
  offset_.resize(n + 1);
  offset_[0] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t f = i;
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) f = std::min(f, ci[k]);
    first_[i] = f;
    offset_[i + 1] = offset_[i] + (i - f + 1);
  }
  values_.assign(offset_[n], 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k)
      if (ci[k] <= i) values_[offset_[i] + (ci[k] - first_[i])] = val[k];

  for (std::size_t i = 0; i < n; ++i) {
    double* li = values_.data() + offset_[i];
    const std::size_t fi = first_[i];
    for (std::size_t j = fi; j <= i; ++j) {
      const std::size_t fj = first_[j];
      const std::size_t start = std::max(fi, fj);
      const double* lj = values_.data() + offset_[j];
      double s = li[j - fi];
      for (std::size_t k = start; k < j; ++k) s -= li[k - fi] * lj[k - fj];
      if (j == i) {
        if (!(s > 0.0)) {
          throw SingularSystemError(
              "EnvelopeCholesky: operator not positive definite at pivot " +
                  std::to_string(i),
              i);
        }
        li[i - fi] = std::sqrt(s);
      } else {
        li[j - fi] = s / lj[j - fj];
      }
    }
  }
}

Vector EnvelopeCholesky::solve(const Vector& b) const {
  const std::size_t n = size();
  require_size(b.size(), n, "EnvelopeCholesky solve");
  Vector y(b);
  for (std::size_t i = 0; i < n; ++i) {
    double s = y[i];
    for (std::size_t k = first_[i]; k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    y[i] /= l(i, i);
    const double yi = y[i];
    for (std::size_t k = first_[i]; k < i; ++k) y[k] -= l(i, k) * yi;
  }
  return y;
}

}  // namespace lagrange::linalg
