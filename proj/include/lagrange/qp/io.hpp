#pragma once

#include <filesystem>
#include <optional>

#include "lagrange/linalg/sparse.hpp"
#include "lagrange/qp/problem.hpp"

namespace lagrange::qp {

/// Raw contents of a problem directory: A.mtx and C.mtx are required,
/// b.txt and d.txt are optional. A 0 x N C.mtx means "unconstrained".
struct ProblemFiles {
  SparseOperator A;
  SparseOperator C;
  std::optional<Vector> b;
  std::optional<Vector> d;
};

ProblemFiles read_problem_files(const std::filesystem::path& dir);

/// Loads and validates a QpProblem; b.txt is required, a missing d.txt
/// means d = 0.
QpProblem load_problem(const std::filesystem::path& dir);

void write_problem(const std::filesystem::path& dir, const QpProblem& problem);

/// x.txt and lambda.txt.
void write_solution(const std::filesystem::path& dir, const SaddleSolution& solution);

}  // namespace lagrange::qp
