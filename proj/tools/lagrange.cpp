#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lagrange/cli/commands.hpp"

using lagrange::cli::RunConfig;

namespace {

struct Flags {
  std::string input;
  std::string output = ".";
  std::optional<std::size_t> n;
  std::vector<std::size_t> n_list;
  std::string case_id = "taylor_green";
  double tol = 1e-10;
  std::string method = "direct";
  std::uint64_t seed = 20240601;
  bool infsup = false;
  bool corrupt_solver = false;
  bool inject_exact = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--output", f.output, "output directory")->capture_default_str();
  sub->add_option("--tol", f.tol, "relative tolerance")->capture_default_str();
}

void add_grid(CLI::App* sub, Flags& f) {
  sub->add_option("--n", f.n, "cells per side");
  sub->add_option("--n-list", f.n_list, "comma-separated grid sizes")->delimiter(',');
  sub->add_option("--case", f.case_id, "taylor_green, polynomial or zero")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equality-constrained quadratic minimization and Stokes multiplier checks"};
  app.require_subcommand(1);
  Flags f;

  auto* qp = app.add_subcommand("qp-solve", "solve a QP from A.mtx, C.mtx, b.txt[, d.txt]");
  qp->add_option("--input", f.input, "problem directory")->required();
  qp->add_option("--method", f.method, "direct, nullspace or schur")->capture_default_str();
  qp->add_flag("--infsup", f.infsup, "also report the inf-sup constant of C");
  add_common(qp, f);

  auto* st = app.add_subcommand("stokes", "coupled and minimization solves on a MAC grid");
  add_grid(st, f);
  add_common(st, f);

  auto* cv = app.add_subcommand("converge", "refinement study with observed orders");
  add_grid(cv, f);
  add_common(cv, f);
  cv->add_flag("--inject-exact", f.inject_exact)->group("");

  auto* is = app.add_subcommand("infsup", "discrete inf-sup constants");
  add_grid(is, f);
  is->add_option("--input", f.input, "directory with A.mtx, C.mtx[, Mq.mtx]");
  add_common(is, f);

  auto* ve = app.add_subcommand("verify", "randomized property suites");
  ve->add_option("--seed", f.seed, "random seed")->capture_default_str();
  add_common(ve, f);
  ve->add_flag("--corrupt-solver", f.corrupt_solver)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lagrange::cli::kBadInput;
  }

  RunConfig config;
  config.command = app.get_subcommands().front()->get_name();
  config.input_dir = f.input;
  config.output_dir = f.output;
  config.n = f.n;
  config.n_list = f.n_list;
  config.case_id = f.case_id;
  config.tol = f.tol;
  config.seed = f.seed;
  config.infsup = f.infsup;
  config.corrupt_solver = f.corrupt_solver;
  config.inject_exact = f.inject_exact;
  const auto method = lagrange::qp::parse_method(f.method);
  if (!method) {
    std::cerr << "lagrange: unknown --method '" << f.method << "'\n";
    return lagrange::cli::kBadInput;
  }
  config.method = *method;
  return lagrange::cli::run(config, std::cout, std::cerr);
}
