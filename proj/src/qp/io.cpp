#include "lagrange/qp/io.hpp"

#include "lagrange/linalg/errors.hpp"
#include "lagrange/linalg/matrix_market.hpp"

namespace lagrange::qp {

namespace fs = std::filesystem;

namespace {

void require_file(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw ParseError("missing file " + path.string(), 0);
}

}  // namespace

ProblemFiles read_problem_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ParseError("not a directory: " + dir.string(), 0);
  require_file(dir / "A.mtx");
  require_file(dir / "C.mtx");
  ProblemFiles files{linalg::read_matrix_market(dir / "A.mtx"),
                     linalg::read_matrix_market(dir / "C.mtx"), std::nullopt, std::nullopt};
  if (fs::exists(dir / "b.txt")) files.b = linalg::read_vector(dir / "b.txt");
  if (fs::exists(dir / "d.txt")) files.d = linalg::read_vector(dir / "d.txt");
  return files;
}

QpProblem load_problem(const fs::path& dir) {
  ProblemFiles files = read_problem_files(dir);
  if (!files.b) throw ParseError("missing file " + (dir / "b.txt").string(), 0);
  Vector d = files.d ? std::move(*files.d) : Vector(files.C.rows());
  return QpProblem(std::move(files.A), std::move(*files.b), std::move(files.C), std::move(d));
}

void write_problem(const fs::path& dir, const QpProblem& problem) {
  fs::create_directories(dir);
  linalg::write_matrix_market(dir / "A.mtx", problem.A());
  linalg::write_matrix_market(dir / "C.mtx", problem.C());
  linalg::write_vector(dir / "b.txt", problem.b());
  linalg::write_vector(dir / "d.txt", problem.d());
}

void write_solution(const fs::path& dir, const SaddleSolution& solution) {
  fs::create_directories(dir);
  linalg::write_vector(dir / "x.txt", solution.x);
  linalg::write_vector(dir / "lambda.txt", solution.lambda);
}

}  // namespace lagrange::qp
