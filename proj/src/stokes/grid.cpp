#include "lagrange/stokes/grid.hpp"

#include <string>

#include "lagrange/linalg/errors.hpp"

namespace lagrange::stokes {

MacGrid::MacGrid(std::size_t n) : n_(n), h_(n > 0 ? 1.0 / static_cast<double>(n) : 0.0) {
  if (n < 2) throw InvalidArgument("MacGrid: need n >= 2 cells per side, got " + std::to_string(n));
}

MacGrid build_grid(std::size_t n) { return MacGrid(n); }

VelocityField::VelocityField(const MacGrid& g, Vector v) : grid(g), values(std::move(v)) {
  linalg::require_size(values.size(), grid.num_velocity(), "VelocityField");
}

PressureField::PressureField(const MacGrid& g, Vector v) : grid(g), values(std::move(v)) {
  linalg::require_size(values.size(), grid.num_pressure(), "PressureField");
}

}  // namespace lagrange::stokes
