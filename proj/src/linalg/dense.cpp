#include "lagrange/linalg/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lagrange/linalg/errors.hpp"

namespace lagrange::linalg {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_columns(const std::vector<Vector>& columns,
                                      std::size_t rows) {
  DenseMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

Vector DenseMatrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void DenseMatrix::set_column(std::size_t j, const Vector& v) {
  require_size(v.size(), rows_, "DenseMatrix::set_column");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Vector multiply(const DenseMatrix& a, const Vector& x) {
  require_size(x.size(), a.cols(), "dense multiply");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* r = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector multiply_transpose(const DenseMatrix& a, const Vector& x) {
  require_size(x.size(), a.rows(), "dense transpose multiply");
  Vector y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* r = a.row(i);
    const double xi = x[i];
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += r[j] * xi;
  }
  return y;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("dense matrix product: inner dimensions " +
                         std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()));
  }
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

CholeskyFactor::CholeskyFactor(const DenseMatrix& spd) : l_(spd.rows(), spd.rows()) {
  if (spd.rows() != spd.cols()) {
    throw DimensionError("Cholesky factorization of a non-square matrix");
  }
  const std::size_t n = spd.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double* li = l_.row(i);
    for (std::size_t j = 0; j <= i; ++j) {
      const double* lj = l_.row(j);
      double s = spd(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
      if (i == j) {
        if (!(s > 0.0)) {
          throw SingularSystemError(
              "Cholesky: matrix is not positive definite (pivot " +
                  std::to_string(i) + " = " + std::to_string(s) + ")",
              i);
        }
        li[i] = std::sqrt(s);
      } else {
        li[j] = s / lj[j];
      }
    }
  }
}

Vector CholeskyFactor::solve_lower(const Vector& b) const {
  require_size(b.size(), size(), "Cholesky solve");
  Vector y(b);
  for (std::size_t i = 0; i < size(); ++i) {
    const double* li = l_.row(i);
    double s = y[i];
    for (std::size_t k = 0; k < i; ++k) s -= li[k] * y[k];
    y[i] = s / li[i];
  }
  return y;
}

Vector CholeskyFactor::solve_upper(const Vector& y) const {
  require_size(y.size(), size(), "Cholesky solve");
  Vector x(y);
  for (std::size_t ii = size(); ii-- > 0;) {
    x[ii] /= l_(ii, ii);
    const double xi = x[ii];
    const double* li = l_.row(ii);
    for (std::size_t k = 0; k < ii; ++k) x[k] -= li[k] * xi;
  }
  return x;
}

Vector CholeskyFactor::solve(const Vector& b) const {
  return solve_upper(solve_lower(b));
}

SymmetricEigensystem symmetric_eigensystem(const DenseMatrix& input) {
  if (input.rows() != input.cols()) {
    throw DimensionError("symmetric eigensystem of a non-square matrix");
  }
  const std::size_t n = input.rows();
  DenseMatrix a = input;
  DenseMatrix v = DenseMatrix::identity(n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        total += a(i, j) * a(i, j);
        if (i != j) off += a(i, j) * a(i, j);
      }
    }
    if (off <= 1e-30 * total || off == 0.0) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymmetricEigensystem out{Vector(n), DenseMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace lagrange::linalg
