#include "lagrange/linalg/vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lagrange/linalg/errors.hpp"

namespace lagrange::linalg {

Vector& Vector::operator+=(const Vector& other) {
  require_size(other.size(), size(), "vector addition");
  for (std::size_t i = 0; i < size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_size(other.size(), size(), "vector subtraction");
  for (std::size_t i = 0; i < size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Vector& Vector::operator*=(double alpha) {
  for (double& v : values_) v *= alpha;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= -1.0; }
Vector operator*(double alpha, Vector x) { return x *= alpha; }

double dot(const Vector& a, const Vector& b) {
  require_size(b.size(), a.size(), "dot product");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& x) {
  // Scaled accumulation so that very large or tiny entries do not overflow.
  double scale = 0.0;
  double ssq = 1.0;
  for (double v : x) {
    if (v == 0.0) continue;
    const double a = std::fabs(v);
    if (scale < a) {
      ssq = 1.0 + ssq * (scale / a) * (scale / a);
      scale = a;
    } else {
      ssq += (a / scale) * (a / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

double norm_inf(const Vector& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

double sum(const Vector& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

void axpy(double alpha, const Vector& x, Vector& y) {
  require_size(x.size(), y.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vector concat(const Vector& a, const Vector& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return Vector(std::move(out));
}

Vector slice(const Vector& x, std::size_t first, std::size_t count) {
  if (first + count > x.size()) {
    throw DimensionError("slice [" + std::to_string(first) + ", " +
                         std::to_string(first + count) +
                         ") exceeds vector length " + std::to_string(x.size()));
  }
  return Vector(std::vector<double>(x.begin() + static_cast<long>(first),
                                    x.begin() + static_cast<long>(first + count)));
}

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

void require_finite(const Vector& x, std::string_view what) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw NonFiniteError(std::string(what) + ": non-finite entry at index " +
                           std::to_string(i));
    }
  }
}

void require_size(std::size_t actual, std::size_t expected,
                  std::string_view what) {
  if (actual != expected) {
    throw DimensionError(std::string(what) + ": expected length " +
                         std::to_string(expected) + ", got " +
                         std::to_string(actual));
  }
}

}  // namespace lagrange::linalg
