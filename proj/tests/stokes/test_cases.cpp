#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lagrange/linalg/errors.hpp"
#include "lagrange/stokes/cases.hpp"
#include "lagrange/stokes/solve.hpp"

using namespace lagrange;
using namespace lagrange::stokes;

namespace {

constexpr double kD = 1e-3;

// Fourth-order central differences.
double dx(const ScalarField& f, double x, double y) {
  return (-f(x + 2 * kD, y) + 8 * f(x + kD, y) - 8 * f(x - kD, y) + f(x - 2 * kD, y)) / (12 * kD);
}
double dy(const ScalarField& f, double x, double y) {
  return (-f(x, y + 2 * kD) + 8 * f(x, y + kD) - 8 * f(x, y - kD) + f(x, y - 2 * kD)) / (12 * kD);
}
double lap(const ScalarField& f, double x, double y) {
  auto d2 = [&](double fp2, double fp1, double f0, double fm1, double fm2) {
    return (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * kD * kD);
  };
  const double f0 = f(x, y);
  return d2(f(x + 2 * kD, y), f(x + kD, y), f0, f(x - kD, y), f(x - 2 * kD, y)) +
         d2(f(x, y + 2 * kD), f(x, y + kD), f0, f(x, y - kD), f(x, y - 2 * kD));
}

// 5-point Gauss-Legendre on [0, 1].
constexpr double kGx[5] = {0.04691007703066800, 0.23076534494715845, 0.5,
                           0.76923465505284155, 0.95308992296933200};
constexpr double kGw[5] = {0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
                           0.23931433524968324, 0.11846344252809454};

}  // namespace

TEST_CASE("cases: forcing equals -Lap u + grad p by finite differences") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  for (const char* id : {"taylor_green", "polynomial"}) {
    CAPTURE(id);
    const auto c = manufactured_case(id);
    CHECK(c.id == id);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double x = unit(rng);
      const double y = unit(rng);
      const double fx = -lap(c.u, x, y) + dx(c.p, x, y);
      const double fy = -lap(c.v, x, y) + dy(c.p, x, y);
      worst = std::max({worst, std::fabs(fx - c.fx(x, y)), std::fabs(fy - c.fy(x, y))});
    }
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("cases: velocity is divergence free") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double pi = std::numbers::pi;
  const auto tg = manufactured_case("taylor_green");
  const auto poly = manufactured_case("polynomial");
  double fd_worst = 0.0;
  double exact_worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double x = unit(rng);
    const double y = unit(rng);
    for (const auto* c : {&tg, &poly}) {
      fd_worst = std::max(fd_worst, std::fabs(dx(c->u, x, y) + dy(c->v, x, y)));
    }
    // d/dx sin^2(pi x) = pi sin(2 pi x), so both partials are +-pi sin(2 pi x) sin(2 pi y).
    const double ux = pi * std::sin(2 * pi * x) * std::sin(2 * pi * y);
    const double vy = -pi * std::sin(2 * pi * x) * std::sin(2 * pi * y);
    exact_worst = std::max(exact_worst, std::fabs(ux + vy));
    const double h = 1e-7;
    const double ux_fd = (tg.u(x + h, y) - tg.u(x - h, y)) / (2 * h);
    CHECK(std::fabs(ux_fd - ux) <= 1e-6);
  }
  CHECK(exact_worst <= 1e-12);
  CHECK(fd_worst <= 1e-8);
}

TEST_CASE("cases: velocity vanishes on the boundary") {
  for (const char* id : {"taylor_green", "polynomial"}) {
    const auto c = manufactured_case(id);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double s = k / 99.0;
      for (auto [x, y] : {std::pair{s, 0.0}, std::pair{s, 1.0}, std::pair{0.0, s},
                          std::pair{1.0, s}}) {
        worst = std::max({worst, std::fabs(c.u(x, y)), std::fabs(c.v(x, y))});
      }
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("cases: pressure has zero mean") {
  for (const char* id : {"taylor_green", "polynomial"}) {
    const auto c = manufactured_case(id);
    double mean = 0.0;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) mean += kGw[a] * kGw[b] * c.p(kGx[a], kGx[b]);
    CHECK(std::fabs(mean) <= 1e-15);
  }
}

TEST_CASE("cases: zero case and unknown ids") {
  const auto z = manufactured_case("zero");
  CHECK(z.fx(0.3, 0.4) == 0.0);
  CHECK(z.p(0.3, 0.4) == 0.0);
  CHECK_THROWS_AS(manufactured_case("lid_driven"), InvalidArgument);
  CHECK(case_ids().size() == 3);
}

TEST_CASE("sample_forcing: constant, zero, and a quadrature oracle") {
  const MacGrid g(6);
  const double h2 = g.h() * g.h();
  CHECK(linalg::norm_inf(sample_forcing(g, manufactured_case("zero"))) == 0.0);

  ManufacturedCase unit_x = manufactured_case("zero");
  unit_x.fx = [](double, double) { return 1.0; };
  const Vector b = sample_forcing(g, unit_x);
  for (std::size_t k = 0; k < g.num_u(); ++k) CHECK(b[k] == h2);
  for (std::size_t k = g.num_u(); k < g.num_velocity(); ++k) CHECK(b[k] == 0.0);

  // Oracle: 2x2 Gauss average of f over each face's control volume, times h^2.
  const auto tg = manufactured_case("taylor_green");
  double prev = 0.0;
  for (std::size_t n : {8, 16}) {
    const MacGrid grid(n);
    const double h = grid.h();
    const double o = 0.5 * h / std::sqrt(3.0);
    const Vector sampled = sample_forcing(grid, tg);
    Vector oracle(grid.num_velocity());
    auto avg = [&](const ScalarField& f, Point q) {
      return 0.25 * h * h *
             (f(q.x - o, q.y - o) + f(q.x + o, q.y - o) + f(q.x - o, q.y + o) + f(q.x + o, q.y + o));
    };
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        oracle[grid.u_index(i, j)] = avg(tg.fx, grid.u_position(i, j));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 1; j < n; ++j)
        oracle[grid.v_index(i, j)] = avg(tg.fy, grid.v_position(i, j));
    const double rel = linalg::norm2(sampled - oracle) / linalg::norm2(oracle);
    CHECK(rel <= 0.1);
    if (prev > 0.0) CHECK(prev / rel == doctest::Approx(4.0).epsilon(0.1));
    prev = rel;
  }
}

TEST_CASE("zero_mean_project") {
  const MacGrid g(16);
  PressureField c(g, Vector(g.num_pressure(), 3.5));
  CHECK(linalg::norm_inf(zero_mean_project(c).values) <= 1e-15);

  const auto tg = manufactured_case("taylor_green");
  const PressureField p = sample_pressure(g, tg);
  const PressureField q = zero_mean_project(p);
  const double shift = linalg::norm_inf(p.values - q.values);
  CHECK(shift <= 1e-3);
  CHECK(std::fabs(linalg::sum(q.values)) <= 1e-12 * linalg::norm2(q.values));
  const PressureField twice = zero_mean_project(q);
  CHECK(linalg::norm_inf(twice.values - q.values) <= 1e-15);
}
