#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lagrange/linalg/errors.hpp"
#include "lagrange/linalg/matrix_market.hpp"
#include "lagrange/qp/io.hpp"
#include "lagrange/qp/properties.hpp"
#include "lagrange/qp/solvers.hpp"
#include "test_support.hpp"

using namespace lagrange;
using namespace lagrange::qp;
using namespace lagrange::testing;

namespace {

bool same_entries(const SparseOperator& a, const SparseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != b.at(i, j)) return false;
  return true;
}

}  // namespace

TEST_CASE("property suite: default seed passes every property") {
  PropertyOptions options;
  const auto results = run_property_suite(options);
  REQUIRE(results.size() == 10);
  for (const auto& r : results) {
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.passed);
    CHECK(r.checks > 0);
  }
}

TEST_CASE("property suite: a corrupted solver is caught") {
  PropertyOptions options;
  options.instances = 10;
  options.feasible_samples = 50;
  options.infsup_instances = 2;
  options.corrupt_solver = true;
  std::size_t failures = 0;
  for (const auto& r : run_property_suite(options)) failures += r.passed ? 0 : 1;
  CHECK(failures >= 1);
}

TEST_CASE("property suite: deterministic for a fixed seed") {
  PropertyOptions options;
  options.instances = 8;
  options.infsup_instances = 3;
  const auto a = run_property_suite(options);
  const auto b = run_property_suite(options);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].worst == b[i].worst);
    CHECK(a[i].checks == b[i].checks);
  }
}

TEST_CASE("random problems are valid and seed-controlled") {
  std::mt19937_64 r1(9);
  std::mt19937_64 r2(9);
  const QpProblem p = random_problem(r1, 12, 4, true);
  const QpProblem q = random_problem(r2, 12, 4, true);
  CHECK(p.b() == q.b());
  CHECK(p.d() == q.d());
  CHECK(p.A().has_exact_symmetry());
}

TEST_CASE("io: problem and solution round trip through a directory") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lagrange_qp_io_test";
  fs::remove_all(dir);
  std::mt19937_64 rng(13);
  const QpProblem p = random_problem(rng, 9, 3, true);
  write_problem(dir, p);
  const QpProblem back = load_problem(dir);
  CHECK(back.b() == p.b());
  CHECK(back.d() == p.d());
  CHECK(same_entries(back.A(), p.A()));
  CHECK(same_entries(back.C(), p.C()));

  const SaddleSolution s = solve_kkt_direct(back);
  write_solution(dir, s);
  CHECK(linalg::read_vector(dir / "x.txt") == s.x);
  CHECK(linalg::read_vector(dir / "lambda.txt") == s.lambda);

  fs::remove(dir / "d.txt");
  CHECK(load_problem(dir).d() == Vector(3));
  fs::remove(dir / "C.mtx");
  CHECK_THROWS_AS(load_problem(dir), ParseError);
  fs::remove_all(dir);
}
