#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lagrange/qp/problem.hpp"

namespace lagrange::qp {

/// Random well-conditioned instance: A = G^T G / N + I, Gaussian C (full row
/// rank with probability one), Gaussian b. d is zero unless `inhomogeneous`.
QpProblem random_problem(std::mt19937_64& rng, std::size_t n, std::size_t m,
                         bool inhomogeneous);

/// Orthogonal projector Q Q^T onto a random k-dimensional subspace of R^n.
SparseOperator random_projector(std::mt19937_64& rng, std::size_t n, std::size_t k);

struct PropertyOptions {
  std::uint64_t seed = 20240601;
  std::size_t instances = 100;         // solver properties
  std::size_t feasible_samples = 1000; // per instance, for the converse direction
  std::size_t infsup_instances = 20;
  double tol = 1e-10;
  /// Test hook: nudge every solver output along Ker C so the suite must fail.
  bool corrupt_solver = false;
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed discrepancy
  double threshold = 0.0;
  std::size_t checks = 0;
  std::string detail;      // first failure, if any
};

std::vector<PropertyResult> run_property_suite(const PropertyOptions& options);

}  // namespace lagrange::qp
