#pragma once

#include <cstddef>

#include "lagrange/linalg/vector.hpp"

namespace lagrange::stokes {

using linalg::Vector;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Uniform staggered grid on the unit square with n cells per side.
///
/// u lives on interior vertical faces (i h, (j + 1/2) h), i = 1..n-1,
/// j = 0..n-1; v on interior horizontal faces ((i + 1/2) h, j h), i = 0..n-1,
/// j = 1..n-1; p at cell centres. Faces on the wall carry the Dirichlet zero
/// and are not unknowns. Velocity vectors store all u faces, then all v faces.
class MacGrid {
 public:
  explicit MacGrid(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  double h() const noexcept { return h_; }

  std::size_t num_u() const noexcept { return n_ * (n_ - 1); }
  std::size_t num_v() const noexcept { return n_ * (n_ - 1); }
  std::size_t num_velocity() const noexcept { return 2 * n_ * (n_ - 1); }
  std::size_t num_pressure() const noexcept { return n_ * n_; }

  std::size_t u_index(std::size_t i, std::size_t j) const noexcept { return (i - 1) * n_ + j; }
  std::size_t v_index(std::size_t i, std::size_t j) const noexcept {
    return num_u() + i * (n_ - 1) + (j - 1);
  }
  std::size_t p_index(std::size_t i, std::size_t j) const noexcept { return i * n_ + j; }

  Point u_position(std::size_t i, std::size_t j) const noexcept {
    return {static_cast<double>(i) * h_, (static_cast<double>(j) + 0.5) * h_};
  }
  Point v_position(std::size_t i, std::size_t j) const noexcept {
    return {(static_cast<double>(i) + 0.5) * h_, static_cast<double>(j) * h_};
  }
  Point p_position(std::size_t i, std::size_t j) const noexcept {
    return {(static_cast<double>(i) + 0.5) * h_, (static_cast<double>(j) + 0.5) * h_};
  }

  bool operator==(const MacGrid& other) const noexcept { return n_ == other.n_; }

 private:
  std::size_t n_;
  double h_;
};

MacGrid build_grid(std::size_t n);

/// Face velocities; wall faces are implicit zeros.
struct VelocityField {
  MacGrid grid;
  Vector values;  // length num_velocity()

  explicit VelocityField(const MacGrid& g) : grid(g), values(g.num_velocity()) {}
  VelocityField(const MacGrid& g, Vector v);

  double u(std::size_t i, std::size_t j) const { return values[grid.u_index(i, j)]; }
  double v(std::size_t i, std::size_t j) const { return values[grid.v_index(i, j)]; }
};

struct PressureField {
  MacGrid grid;
  Vector values;  // length num_pressure()

  explicit PressureField(const MacGrid& g) : grid(g), values(g.num_pressure()) {}
  PressureField(const MacGrid& g, Vector v);

  double p(std::size_t i, std::size_t j) const { return values[grid.p_index(i, j)]; }
};

}  // namespace lagrange::stokes
