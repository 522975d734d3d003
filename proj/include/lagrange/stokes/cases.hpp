#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace lagrange::stokes {

using ScalarField = std::function<double(double, double)>;

/// Exact Stokes solution on the unit square with f = -Lap u + grad p.
/// u vanishes on the boundary, div u = 0 and p has zero mean.
struct ManufacturedCase {
  std::string id;
  ScalarField u;
  ScalarField v;
  ScalarField p;
  ScalarField fx;
  ScalarField fy;
};

/// "taylor_green", "polynomial", or "zero" (f = 0, exact solution zero).
ManufacturedCase manufactured_case(std::string_view id);

std::vector<std::string> case_ids();

}  // namespace lagrange::stokes
