#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace lagrange::linalg {

/// Fixed-length real vector. Length is set at construction; arithmetic
/// between vectors requires matching lengths.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t size, double value = 0.0)
      : values_(size, value) {}
  Vector(std::initializer_list<double> values) : values_(values) {}
  explicit Vector(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  double* data() noexcept { return values_.data(); }
  const double* data() const noexcept { return values_.data(); }
  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  std::span<double> span() noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double alpha);

  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> values_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator-(Vector a);
Vector operator*(double alpha, Vector x);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& x);
double norm_inf(const Vector& x);
double sum(const Vector& x);

/// y += alpha * x
void axpy(double alpha, const Vector& x, Vector& y);

/// Concatenation [a; b].
Vector concat(const Vector& a, const Vector& b);
/// Entries [first, first + count).
Vector slice(const Vector& x, std::size_t first, std::size_t count);

bool all_finite(std::span<const double> values);

/// Throws NonFiniteError naming `what` if any entry is NaN or infinite.
void require_finite(const Vector& x, std::string_view what);
/// Throws DimensionError naming `what` unless `actual == expected`.
void require_size(std::size_t actual, std::size_t expected,
                  std::string_view what);

}  // namespace lagrange::linalg
