#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lagrange/linalg/matrix_market.hpp"
#include "lagrange/qp/io.hpp"
#include "lagrange/qp/properties.hpp"
#include "lagrange/stokes/io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace lagrange;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lagrange_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Run lagrange_cli(const std::string& args) {
  const fs::path dir = fs::temp_directory_path() / "lagrange_cli_tests";
  fs::create_directories(dir);
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string("\"") + LAGRANGE_CLI_PATH + "\" " + args + " >\"" +
                          out.string() + "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

fs::path hand_instance_dir() {
  const fs::path dir = scratch("hand");
  std::ofstream(dir / "A.mtx") << "%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 1\n2 2 1\n";
  std::ofstream(dir / "C.mtx") << "%%MatrixMarket matrix coordinate real general\n1 2 1\n1 1 1\n";
  std::ofstream(dir / "b.txt") << "1\n1\n";
  return dir;
}

}  // namespace

TEST_CASE("cli qp-solve: hand instance files") {
  const fs::path in = hand_instance_dir();
  for (const char* method : {"direct", "nullspace", "schur"}) {
    CAPTURE(method);
    const fs::path out = scratch(std::string("hand_out_") + method);
    const Run r = lagrange_cli("qp-solve --input " + in.string() + " --output " + out.string() +
                               " --method " + method + " --infsup");
    REQUIRE(r.code == 0);
    const auto x = linalg::read_vector(out / "x.txt");
    const auto lambda = linalg::read_vector(out / "lambda.txt");
    REQUIRE(x.size() == 2);
    REQUIRE(lambda.size() == 1);
    CHECK(std::fabs(x[0]) <= 1e-12);
    CHECK(std::fabs(x[1] - 1.0) <= 1e-12);
    CHECK(std::fabs(lambda[0] + 1.0) <= 1e-12);
    const json report = read_json(out / "report.json");
    CHECK(report["method_tag"] == method);
    CHECK(report.contains("iterations"));
    CHECK(report["residuals"]["stationarity"].get<double>() <= 1e-12);
    CHECK(report["beta"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("cli qp-solve: malformed inputs exit 3 with a diagnostic") {
  const fs::path in = hand_instance_dir();
  const fs::path out = scratch("bad_out");

  fs::remove(in / "C.mtx");
  Run r = lagrange_cli("qp-solve --input " + in.string() + " --output " + out.string());
  CHECK(r.code == 3);
  CHECK(r.err.find("C.mtx") != std::string::npos);

  std::ofstream(in / "C.mtx") << "%%MatrixMarket matrix coordinate real general\n1 2 1\n1 x 1\n";
  r = lagrange_cli("qp-solve --input " + in.string() + " --output " + out.string());
  CHECK(r.code == 3);
  CHECK(r.err.find("line 3") != std::string::npos);

  // Duplicate constraint rows: the multiplier would not be unique.
  const fs::path dup = hand_instance_dir();
  std::ofstream(dup / "A.mtx") << "%%MatrixMarket matrix coordinate real symmetric\n3 3 3\n1 1 1\n2 2 1\n3 3 1\n";
  std::ofstream(dup / "C.mtx")
      << "%%MatrixMarket matrix coordinate real general\n2 3 2\n1 1 1\n2 1 1\n";
  std::ofstream(dup / "b.txt") << "1\n1\n1\n";
  r = lagrange_cli("qp-solve --input " + dup.string() + " --output " + out.string());
  CHECK(r.code == 3);
  CHECK(r.err.find("rank") != std::string::npos);

  r = lagrange_cli("qp-solve --input " + in.string() + " --method cholesky");
  CHECK(r.code == 3);
  r = lagrange_cli("qp-solve --output " + out.string());
  CHECK(r.code == 3);
  r = lagrange_cli("frobnicate");
  CHECK(r.code == 3);
}

TEST_CASE("cli qp-solve: methods agree on a random instance") {
  std::mt19937_64 rng(101);
  const fs::path in = scratch("random");
  qp::write_problem(in, qp::random_problem(rng, 30, 8, true));
  std::vector<linalg::Vector> xs;
  std::vector<linalg::Vector> lambdas;
  for (const char* method : {"direct", "nullspace", "schur"}) {
    const fs::path out = scratch(std::string("random_out_") + method);
    const Run r = lagrange_cli("qp-solve --input " + in.string() + " --output " + out.string() +
                               " --method " + method);
    REQUIRE(r.code == 0);
    xs.push_back(linalg::read_vector(out / "x.txt"));
    lambdas.push_back(linalg::read_vector(out / "lambda.txt"));
  }
  for (std::size_t k = 1; k < xs.size(); ++k) {
    CHECK(linalg::norm2(xs[k] - xs[0]) <= 1e-7 * linalg::norm2(xs[0]));
    CHECK(linalg::norm2(lambdas[k] - lambdas[0]) <= 1e-7 * linalg::norm2(lambdas[0]));
  }
}

TEST_CASE("cli stokes: equivalence report and field files") {
  const fs::path out = scratch("stokes_tg");
  Run r = lagrange_cli("stokes --case taylor_green --n 8 --output " + out.string());
  REQUIRE(r.code == 0);
  json report = read_json(out / "report.json");
  CHECK(report["equivalence"]["max_relative_discrepancy"].get<double>() <= 1e-8);
  CHECK(report["minimization"]["method_tag"] == "nullspace");
  CHECK(report["coupled"]["method_tag"] == "direct");
  const auto fields = stokes::read_fields_csv(out / "coupled_fields.csv");
  CHECK(fields.size() == 2 * 8 * 7 + 64);

  const fs::path zero = scratch("stokes_zero");
  r = lagrange_cli("stokes --case zero --n 6 --output " + zero.string());
  REQUIRE(r.code == 0);
  report = read_json(zero / "report.json");
  CHECK(report["errors"]["coupled"]["l2_u"].get<double>() == 0.0);
  CHECK(report["errors"]["minimization"]["l2_p"].get<double>() == 0.0);
  for (const auto& rec : stokes::read_fields_csv(zero / "minimization_fields.csv"))
    CHECK(rec.value == 0.0);

  const fs::path poly = scratch("stokes_poly");
  r = lagrange_cli("stokes --case polynomial --n 16 --output " + poly.string());
  REQUIRE(r.code == 0);
  report = read_json(poly / "report.json");
  CHECK(std::isfinite(report["errors"]["coupled"]["l2_u"].get<double>()));
  CHECK(std::isfinite(report["errors"]["coupled"]["l2_p"].get<double>()));
  CHECK(report["divergence"]["coupled_relative"].get<double>() <= 1e-10);
  CHECK(report["divergence"]["minimization_relative"].get<double>() <= 1e-10);

  CHECK(lagrange_cli("stokes --case lid --n 8 --output " + out.string()).code == 3);
  CHECK(lagrange_cli("stokes --n 1 --output " + out.string()).code == 3);
}

TEST_CASE("cli converge: preconditions, exact injection, and a short study") {
  const fs::path out = scratch("converge");
  CHECK(lagrange_cli("converge --n-list 8 --output " + out.string()).code == 3);
  CHECK(lagrange_cli("converge --n-list 16,8 --output " + out.string()).code == 3);

  Run r = lagrange_cli("converge --n-list 8,16,32 --inject-exact --output " + out.string());
  REQUIRE(r.code == 0);
  auto rows = stokes::read_convergence_csv(out / "convergence.csv");
  REQUIRE(rows.size() == 3);
  CHECK(*rows[2].order_u == doctest::Approx(2.0).epsilon(0.05));
  CHECK(read_json(out / "report.json")["exact_injection"] == true);

  r = lagrange_cli("converge --case taylor_green --n-list 8,16 --output " + out.string());
  REQUIRE(r.code == 0);
  rows = stokes::read_convergence_csv(out / "convergence.csv");
  CHECK(*rows[1].order_u >= 1.8);
  CHECK(*rows[1].order_u <= 2.2);
}

TEST_CASE("cli infsup: tiny grid and the projection input") {
  const fs::path out = scratch("infsup");
  Run r = lagrange_cli("infsup --n 2 --output " + out.string());
  REQUIRE(r.code == 0);
  const auto rows = stokes::read_infsup_csv(out / "infsup.csv");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].beta > 0.0);

  std::mt19937_64 rng(7);
  const fs::path in = scratch("projection");
  linalg::write_matrix_market(in / "C.mtx", qp::random_projector(rng, 9, 4));
  linalg::write_matrix_market(in / "A.mtx", linalg::SparseOperator::identity(9));
  r = lagrange_cli("infsup --input " + in.string() + " --output " + out.string());
  REQUIRE(r.code == 0);
  const json report = read_json(out / "report.json");
  CHECK(std::fabs(report["beta"].get<double>() - 1.0) <= 1e-12);
  CHECK(std::fabs(report["beta_primal"].get<double>() - 1.0) <= 1e-12);
}

TEST_CASE("cli verify: pass, sensitivity, determinism") {
  const fs::path a = scratch("verify_a");
  const fs::path b = scratch("verify_b");
  Run r = lagrange_cli("verify --output " + a.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(read_json(a / "report.json")["all_passed"] == true);
  r = lagrange_cli("verify --output " + b.string());
  CHECK(r.code == 0);
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));

  const fs::path c = scratch("verify_c");
  r = lagrange_cli("verify --seed 7 --corrupt-solver --output " + c.string());
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(read_json(c / "report.json")["all_passed"] == false);
}

TEST_CASE("cli: help and flag errors") {
  CHECK(lagrange_cli("--help").code == 0);
  CHECK(lagrange_cli("stokes --n abc").code == 3);
  CHECK(lagrange_cli("").code == 3);
}
