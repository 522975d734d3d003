#include "lagrange/stokes/cases.hpp"

#include <cmath>
#include <numbers>

#include "lagrange/linalg/errors.hpp"

namespace lagrange::stokes {

namespace {

constexpr double pi = std::numbers::pi;

// u = (sin^2(pi x) sin(2 pi y), -sin(2 pi x) sin^2(pi y)), p = cos(pi x) cos(pi y)
ManufacturedCase taylor_green() {
  ManufacturedCase c;
  c.id = "taylor_green";
  c.u = [](double x, double y) {
    const double s = std::sin(pi * x);
    return s * s * std::sin(2 * pi * y);
  };
  c.v = [](double x, double y) {
    const double s = std::sin(pi * y);
    return -std::sin(2 * pi * x) * s * s;
  };
  c.p = [](double x, double y) { return std::cos(pi * x) * std::cos(pi * y); };
  c.fx = [](double x, double y) {
    return 2 * pi * pi * std::sin(2 * pi * y) * (1 - 2 * std::cos(2 * pi * x)) -
           pi * std::sin(pi * x) * std::cos(pi * y);
  };
  c.fy = [](double x, double y) {
    return -2 * pi * pi * std::sin(2 * pi * x) * (1 - 2 * std::cos(2 * pi * y)) -
           pi * std::cos(pi * x) * std::sin(pi * y);
  };
  return c;
}

// Stream function g(x) g(y) with g = x^2 (1 - x)^2; p = x - 1/2.
double g0(double t) { return t * t * (1 - t) * (1 - t); }
double g1(double t) { return 2 * t - 6 * t * t + 4 * t * t * t; }
double g2(double t) { return 2 - 12 * t + 12 * t * t; }
double g3(double t) { return -12 + 24 * t; }

ManufacturedCase polynomial() {
  ManufacturedCase c;
  c.id = "polynomial";
  c.u = [](double x, double y) { return g0(x) * g1(y); };
  c.v = [](double x, double y) { return -g1(x) * g0(y); };
  c.p = [](double x, double) { return x - 0.5; };
  c.fx = [](double x, double y) { return -(g2(x) * g1(y) + g0(x) * g3(y)) + 1.0; };
  c.fy = [](double x, double y) { return g3(x) * g0(y) + g1(x) * g2(y); };
  return c;
}

ManufacturedCase zero() {
  const ScalarField nil = [](double, double) { return 0.0; };
  return {"zero", nil, nil, nil, nil, nil};
}

}  // namespace

ManufacturedCase manufactured_case(std::string_view id) {
  if (id == "taylor_green") return taylor_green();
  if (id == "polynomial") return polynomial();
  if (id == "zero") return zero();
  throw InvalidArgument("unknown case '" + std::string(id) +
                        "' (expected taylor_green, polynomial or zero)");
}

std::vector<std::string> case_ids() { return {"taylor_green", "polynomial", "zero"}; }

}  // namespace lagrange::stokes
