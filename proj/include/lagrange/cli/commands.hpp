#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lagrange/qp/problem.hpp"

namespace lagrange::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyFailure = 1,  // verify: at least one property failed
  kSolverFailure = 2,
  kBadInput = 3,         // malformed files, bad flags, unusable parameters
  kCheckFailed = 4,      // a numerical acceptance check (order, inf-sup, equivalence)
};

struct RunConfig {
  std::string command;
  std::filesystem::path input_dir;
  std::filesystem::path output_dir = ".";
  std::optional<std::size_t> n;
  std::vector<std::size_t> n_list;
  std::string case_id = "taylor_green";
  double tol = 1e-10;
  qp::Method method = qp::Method::direct;
  std::uint64_t seed = 20240601;
  bool infsup = false;
  // Test hooks.
  bool corrupt_solver = false;
  bool inject_exact = false;
};

/// Each command writes its files under output_dir, a short human summary to
/// `out` and diagnostics to `err`, and returns an ExitCode.
int cmd_qp_solve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_stokes(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_converge(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_infsup(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.command.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace lagrange::cli
