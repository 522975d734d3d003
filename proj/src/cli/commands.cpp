#include "lagrange/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "lagrange/linalg/errors.hpp"
#include "lagrange/linalg/matrix_market.hpp"
#include "lagrange/qp/infsup.hpp"
#include "lagrange/qp/io.hpp"
#include "lagrange/qp/properties.hpp"
#include "lagrange/qp/solvers.hpp"
#include "lagrange/stokes/infsup.hpp"
#include "lagrange/stokes/io.hpp"
#include "lagrange/stokes/solve.hpp"

namespace lagrange::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;
using linalg::norm2;
using linalg::SparseOperator;

namespace {

constexpr double kEquivalenceTol = 1e-8;
constexpr double kDivergenceTol = 1e-10;
constexpr double kOrderLow = 1.8;
constexpr double kOrderHigh = 2.2;
constexpr double kInfSupVariation = 1.1;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void prepare_output(const RunConfig& config) {
  if (!(config.tol > 0.0)) throw InvalidArgument("--tol must be positive");
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec || !fs::is_directory(config.output_dir)) {
    throw InvalidArgument("cannot create output directory " + config.output_dir.string());
  }
}

// ||a - b|| / ||b||, or ||a - b|| when b vanishes.
double relative_gap(const linalg::Vector& a, const linalg::Vector& b) {
  const double nb = norm2(b);
  const double d = norm2(a - b);
  return nb > 0.0 ? d / nb : d;
}

double relative_divergence(const stokes::StokesSystem& sys, const linalg::Vector& u) {
  const double d = norm2(linalg::apply(sys.operators().B, u));
  const double nu = norm2(u);
  return nu > 0.0 ? d / nu : d;
}

json error_json(const stokes::ErrorNorms& e) {
  return {{"l2_u", e.l2_u}, {"l2_p", e.l2_p}, {"linf_u", e.linf_u}};
}

int fail(std::ostream& err, const std::string& command, int code, const std::string& what) {
  err << "lagrange " << command << ": " << what << '\n';
  return code;
}

}  // namespace

int cmd_qp_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string cmd = "qp-solve";
  if (config.input_dir.empty()) return fail(err, cmd, kBadInput, "--input is required");
  std::optional<qp::QpProblem> problem;
  try {
    prepare_output(config);
    problem.emplace(qp::load_problem(config.input_dir));
  } catch (const Error& e) {
    return fail(err, cmd, kBadInput, e.what());
  }

  qp::SaddleSolution s;
  json report;
  try {
    s = qp::solve(*problem, config.method, config.tol);
    const qp::OptimalityReport opt = qp::check_optimality(*problem, s.x, config.tol);
    const double scale = problem->scale(s.x);
    report = {
        {"command", cmd},
        {"method_tag", std::string(qp::to_string(s.method))},
        {"iterations", s.iterations},
        {"num_variables", problem->num_variables()},
        {"num_constraints", problem->num_constraints()},
        {"tol", config.tol},
        {"objective", qp::objective(*problem, s.x)},
        {"residuals",
         {{"stationarity", s.residual_stationarity},
          {"feasibility", s.residual_feasibility},
          {"scale", scale},
          {"bound", config.tol * scale}}},
        {"optimality",
         {{"projected_gradient_norm", opt.projected_gradient_norm},
          {"feasibility_norm", opt.feasibility_norm}}},
    };
    if (config.infsup) {
      if (problem->num_constraints() == 0) {
        report["beta"] = nullptr;
      } else {
        const auto est = qp::estimate_infsup(
            problem->C(), problem->A(), SparseOperator::identity(problem->num_constraints()),
            qp::InfSupForm::dual_form);
        report["beta"] = est.beta;
      }
    }
  } catch (const Error& e) {
    return fail(err, cmd, kSolverFailure, e.what());
  }

  try {
    qp::write_solution(config.output_dir, s);
    write_json(config.output_dir / "report.json", report);
  } catch (const Error& e) {
    return fail(err, cmd, kBadInput, e.what());
  }
  out << cmd << ": " << qp::to_string(s.method) << ", stationarity "
      << sci(s.residual_stationarity) << ", feasibility " << sci(s.residual_feasibility) << '\n';
  return kOk;
}

int cmd_stokes(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string cmd = "stokes";
  std::optional<stokes::StokesSystem> sys;
  std::optional<stokes::ManufacturedCase> mcase;
  try {
    prepare_output(config);
    mcase.emplace(stokes::manufactured_case(config.case_id));
    sys.emplace(stokes::MacGrid(config.n.value_or(16)));
  } catch (const Error& e) {
    return fail(err, cmd, kBadInput, e.what());
  }

  json report;
  bool passed = false;
  try {
    const auto coupled = stokes::solve_stokes_coupled(*sys, *mcase, config.tol);
    const auto minimized = stokes::solve_stokes_minimization(*sys, *mcase, config.tol);
    const linalg::Vector b = stokes::sample_forcing(sys->grid(), *mcase);
    const auto opt = stokes::check_optimality(*sys, b, minimized.velocity.values, config.tol);

    const double du = relative_gap(minimized.velocity.values, coupled.velocity.values);
    const double dp = relative_gap(minimized.pressure.values, coupled.pressure.values);
    const double div_c = relative_divergence(*sys, coupled.velocity.values);
    const double div_m = relative_divergence(*sys, minimized.velocity.values);
    passed = std::max(du, dp) <= kEquivalenceTol && std::max(div_c, div_m) <= kDivergenceTol;

    report = {
        {"command", cmd},
        {"case", mcase->id},
        {"n", sys->grid().n()},
        {"h", sys->grid().h()},
        {"tol", config.tol},
        {"equivalence",
         {{"velocity_relative_discrepancy", du},
          {"pressure_relative_discrepancy", dp},
          {"max_relative_discrepancy", std::max(du, dp)},
          {"threshold", kEquivalenceTol}}},
        {"divergence",
         {{"coupled_relative", div_c},
          {"minimization_relative", div_m},
          {"threshold", kDivergenceTol}}},
        {"errors",
         {{"coupled", error_json(stokes::error_norms(coupled.velocity, coupled.pressure, *mcase))},
          {"minimization",
           error_json(stokes::error_norms(minimized.velocity, minimized.pressure, *mcase))}}},
        {"coupled", {{"method_tag", std::string(qp::to_string(coupled.saddle.method))},
                     {"iterations", coupled.saddle.iterations},
                     {"stationarity", coupled.saddle.residual_stationarity}}},
        {"minimization",
         {{"method_tag", std::string(qp::to_string(minimized.saddle.method))},
          {"iterations", minimized.saddle.iterations},
          {"stationarity", minimized.saddle.residual_stationarity},
          {"projected_gradient_norm", opt.projected_gradient_norm}}},
        {"passed", passed},
    };
    stokes::write_fields_csv(config.output_dir / "coupled_fields.csv", coupled.velocity,
                             coupled.pressure);
    stokes::write_fields_csv(config.output_dir / "minimization_fields.csv", minimized.velocity,
                             minimized.pressure);
    out << cmd << ": " << mcase->id << " n=" << sys->grid().n() << ", discrepancy "
        << sci(std::max(du, dp)) << ", divergence " << sci(std::max(div_c, div_m)) << '\n';
  } catch (const Error& e) {
    return fail(err, cmd, kSolverFailure, e.what());
  }
  try {
    write_json(config.output_dir / "report.json", report);
  } catch (const Error& e) {
    return fail(err, cmd, kBadInput, e.what());
  }
  if (!passed) return fail(err, cmd, kCheckFailed, "formulation equivalence check failed");
  return kOk;
}

int cmd_converge(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string cmd = "converge";
  std::vector<std::size_t> levels = config.n_list;
  if (levels.empty()) levels = config.n ? std::vector<std::size_t>{*config.n}
                                        : std::vector<std::size_t>{8, 16, 32};
  std::optional<stokes::ManufacturedCase> mcase;
  try {
    prepare_output(config);
    mcase.emplace(stokes::manufactured_case(config.case_id));
  } catch (const Error& e) {
    return fail(err, cmd, kBadInput, e.what());
  }
  if (levels.size() < 2) {
    return fail(err, cmd, kBadInput, "need at least two grid sizes to compute an order");
  }
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] < 2 || (k > 0 && levels[k] <= levels[k - 1])) {
      return fail(err, cmd, kBadInput, "--n-list must be strictly increasing sizes >= 2");
    }
  }

  std::vector<stokes::ConvergenceRow> rows;
  try {
    rows = stokes::convergence_study(*mcase, levels, config.tol, config.inject_exact);
  } catch (const Error& e) {
    return fail(err, cmd, kSolverFailure, e.what());
  }
  const double order = *rows.back().order_u;
  const bool passed = order >= kOrderLow && order <= kOrderHigh;
  json table = json::array();
  for (const auto& r : rows) {
    table.push_back({{"n", r.n},
                     {"h", r.h},
                     {"l2_u", r.errors.l2_u},
                     {"l2_p", r.errors.l2_p},
                     {"linf_u", r.errors.linf_u},
                     {"order_u", r.order_u ? json(*r.order_u) : json(nullptr)},
                     {"order_p", r.order_p ? json(*r.order_p) : json(nullptr)}});
  }
  const json report = {{"command", cmd},
                       {"case", mcase->id},
                       {"exact_injection", config.inject_exact},
                       {"levels", table},
                       {"finest_order_u", order},
                       {"order_window", {kOrderLow, kOrderHigh}},
                       {"passed", passed}};
  try {
    stokes::write_convergence_csv(config.output_dir / "convergence.csv", rows);
    write_json(config.output_dir / "report.json", report);
  } catch (const Error& e) {
    return fail(err, cmd, kBadInput, e.what());
  }
  out << cmd << ": " << mcase->id << ", finest velocity order " << order << '\n';
  if (!passed) {
    return fail(err, cmd, kCheckFailed,
                "velocity order " + std::to_string(order) + " outside [1.8, 2.2]");
  }
  return kOk;
}

namespace {

int infsup_from_files(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string cmd = "infsup";
  std::optional<qp::ProblemFiles> files;
  SparseOperator mq;
  try {
    prepare_output(config);
    files.emplace(qp::read_problem_files(config.input_dir));
    const fs::path mq_path = config.input_dir / "Mq.mtx";
    mq = fs::exists(mq_path) ? linalg::read_matrix_market(mq_path)
                             : SparseOperator::identity(files->C.rows());
  } catch (const Error& e) {
    return fail(err, cmd, kBadInput, e.what());
  }
  json report;
  bool passed = false;
  try {
    const auto dual = qp::estimate_infsup(files->C, files->A, mq, qp::InfSupForm::dual_form);
    const auto primal = qp::estimate_infsup(files->C, files->A, mq, qp::InfSupForm::primal_form);
    const double gap = std::fabs(dual.beta - primal.beta);
    passed = dual.beta > 0.0 && gap <= 1e-8 * dual.beta;
    report = {{"command", cmd},
              {"source", "input"},
              {"beta", dual.beta},
              {"beta_dual", dual.beta},
              {"beta_primal", primal.beta},
              {"form_gap", gap},
              {"eigenvalue_residual", dual.residual},
              {"passed", passed}};
    linalg::write_vector(config.output_dir / "attaining_q.txt", dual.attaining_q);
    write_json(config.output_dir / "report.json", report);
    out << cmd << ": beta " << dual.beta << " (primal " << primal.beta << ")\n";
  } catch (const Error& e) {
    return fail(err, cmd, kSolverFailure, e.what());
  }
  if (!passed) return fail(err, cmd, kCheckFailed, "beta not positive or forms disagree");
  return kOk;
}

}  // namespace

int cmd_infsup(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.input_dir.empty()) return infsup_from_files(config, out, err);
  const std::string cmd = "infsup";
  std::vector<std::size_t> levels = config.n_list;
  if (levels.empty()) levels = config.n ? std::vector<std::size_t>{*config.n}
                                        : std::vector<std::size_t>{8, 16, 32};
  try {
    prepare_output(config);
  } catch (const Error& e) {
    return fail(err, cmd, kBadInput, e.what());
  }
  for (std::size_t n : levels) {
    if (n < 2) return fail(err, cmd, kBadInput, "grid sizes must be >= 2");
  }

  std::vector<stokes::InfSupRow> rows;
  try {
    for (std::size_t n : levels) {
      const stokes::MacGrid grid(n);
      rows.push_back({n, grid.h(), stokes::estimate_infsup_stokes(grid).beta});
    }
  } catch (const Error& e) {
    return fail(err, cmd, kSolverFailure, e.what());
  }
  const auto [lo, hi] = std::minmax_element(rows.begin(), rows.end(),
                                            [](const auto& a, const auto& b) { return a.beta < b.beta; });
  const double ratio = lo->beta > 0.0 ? hi->beta / lo->beta : INFINITY;
  const bool passed = lo->beta > 0.0 && ratio < kInfSupVariation;
  json levels_json = json::array();
  for (const auto& r : rows) levels_json.push_back({{"n", r.n}, {"h", r.h}, {"beta", r.beta}});
  const json report = {{"command", cmd},
                       {"source", "stokes"},
                       {"levels", levels_json},
                       {"min_beta", lo->beta},
                       {"max_beta", hi->beta},
                       {"max_over_min", lo->beta > 0.0 ? json(ratio) : json(nullptr)},
                       {"variation_limit", kInfSupVariation},
                       {"passed", passed}};
  try {
    stokes::write_infsup_csv(config.output_dir / "infsup.csv", rows);
    write_json(config.output_dir / "report.json", report);
  } catch (const Error& e) {
    return fail(err, cmd, kBadInput, e.what());
  }
  for (const auto& r : rows) out << cmd << ": n=" << r.n << " beta " << r.beta << '\n';
  if (!passed) {
    return fail(err, cmd, kCheckFailed,
                "min beta " + std::to_string(lo->beta) + ", max/min " + std::to_string(ratio) +
                    " (limit 1.1)");
  }
  return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string cmd = "verify";
  try {
    prepare_output(config);
  } catch (const Error& e) {
    return fail(err, cmd, kBadInput, e.what());
  }
  qp::PropertyOptions options;
  options.seed = config.seed;
  options.tol = config.tol;
  options.corrupt_solver = config.corrupt_solver;
  std::vector<qp::PropertyResult> results;
  try {
    results = qp::run_property_suite(options);
  } catch (const Error& e) {
    return fail(err, cmd, kSolverFailure, e.what());
  }

  bool all = true;
  json props = json::array();
  char line[160];
  std::snprintf(line, sizeof line, "%-28s %-6s %-11s %-9s %s\n", "property", "result", "worst",
                "bound", "checks");
  out << line;
  for (const auto& r : results) {
    all = all && r.passed;
    std::snprintf(line, sizeof line, "%-28s %-6s %-11.3e %-9.1e %zu\n", r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.worst, r.threshold, r.checks);
    out << line;
    if (!r.passed) out << "    " << r.detail << '\n';
    props.push_back({{"name", r.name},
                     {"passed", r.passed},
                     {"worst", r.worst},
                     {"threshold", r.threshold},
                     {"checks", r.checks},
                     {"detail", r.detail}});
  }
  const json report = {{"command", cmd}, {"seed", config.seed}, {"properties", props},
                       {"all_passed", all}};
  try {
    write_json(config.output_dir / "report.json", report);
  } catch (const Error& e) {
    return fail(err, cmd, kBadInput, e.what());
  }
  if (!all) return fail(err, cmd, kPropertyFailure, "property suite failed");
  return kOk;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.command == "qp-solve") return cmd_qp_solve(config, out, err);
  if (config.command == "stokes") return cmd_stokes(config, out, err);
  if (config.command == "converge") return cmd_converge(config, out, err);
  if (config.command == "infsup") return cmd_infsup(config, out, err);
  if (config.command == "verify") return cmd_verify(config, out, err);
  return fail(err, config.command, kBadInput, "unknown command");
}

}  // namespace lagrange::cli
