#include "ncare/cli.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ncare/examples.h"
#include "ncare/problem_io.h"
#include "ncare/verification.h"

namespace ncare::cli {
namespace {

struct SolveFlags {
  double epsilon = 1e-3;
  int max_iter = 500;
  double init_scale = 0.5;
  bool no_refine = false;
  std::string trace_path;
  std::string output_path;
  std::string format = "text";
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--epsilon", f.epsilon,
                  "stop when |dX1|_F^2 + |dX2|_F^2 < epsilon")
      ->capture_default_str();
  cmd->add_option("--max-iter", f.max_iter, "iteration budget")
      ->capture_default_str();
  cmd->add_option("--init-scale", f.init_scale,
                  "start from init_scale * (I, I)")
      ->capture_default_str();
  cmd->add_flag("--no-refine", f.no_refine,
                "skip Newton-Kleinman polishing of each Riccati solve");
  cmd->add_option("--trace", f.trace_path, "write the iteration trace as CSV");
  cmd->add_option("--output", f.output_path, "write the solution file");
  cmd->add_option("--format", f.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

coupled::IterationConfig to_config(const SolveFlags& f) {
  coupled::IterationConfig cfg;
  cfg.epsilon = f.epsilon;
  cfg.max_iter = f.max_iter;
  cfg.init_scale = f.init_scale;
  cfg.care_refine = !f.no_refine;
  cfg.record_trace = true;
  return cfg;
}

void print_matrix(std::ostream& out, std::string_view name, const Mat& M) {
  out << name << " =\n";
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    out << " ";
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      out << ' ' << std::setw(12) << std::fixed << std::setprecision(6)
          << M(i, j);
    }
    out << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

SolutionFile to_solution(const coupled::SolveReport& r) {
  return SolutionFile{r.values, r.gains, r.iterations, r.res1, r.res2,
                      r.res_gain};
}

// Bad files, bad flags and invalid problem data are input errors; anything
// else raised while solving is numeric.
int error_exit(const SolverError& e) {
  switch (e.code()) {
    case ErrorCode::kIo:
    case ErrorCode::kParse:
    case ErrorCode::kRange:
    case ErrorCode::kDim:
    case ErrorCode::kNotSym:
    case ErrorCode::kIndef:
      return kExitInputError;
    default:
      return kExitNumericError;
  }
}

int status_exit(const coupled::SolveReport& r) {
  switch (r.status) {
    case coupled::Status::kConverged: return kExitOk;
    case coupled::Status::kMaxIter: return kExitNotConverged;
    case coupled::Status::kError: return kExitNumericError;
  }
  return kExitNumericError;
}

void report_text(std::ostream& out, const coupled::SolveReport& r,
                 double epsilon) {
  out << "status: " << coupled::to_string(r.status) << '\n';
  out << "iterations: " << r.iterations << '\n';
  out << "epsilon: " << epsilon << '\n';
  if (r.status == coupled::Status::kError) return;
  print_matrix(out, "X1", r.values.X1);
  print_matrix(out, "X2", r.values.X2);
  print_matrix(out, "Theta1", r.gains.Theta1);
  print_matrix(out, "Theta2", r.gains.Theta2);
  out << std::scientific << std::setprecision(3) << "residuals: res1=" << r.res1
      << " res2=" << r.res2 << " res_gain=" << r.res_gain << '\n';
  out.unsetf(std::ios::floatfield);
  out << std::setprecision(6);
}

// Runs the solver and emits trace/output files. Returns the report; file
// failures surface as SolverError(kIo).
coupled::SolveReport run_solver(const ProblemSpec& spec, const SolveFlags& f,
                                std::ostream& err) {
  const ValidatedProblem vp = validate(spec, QPsdPolicy::kWarn);
  for (const auto& w : vp.warnings()) err << "warning: " << w << '\n';
  coupled::SolveReport report = coupled::solve_coupled(spec, to_config(f));
  if (!f.trace_path.empty()) write_trace(report.trace, f.trace_path);
  if (!f.output_path.empty() && report.status != coupled::Status::kError) {
    write_text_file(f.output_path, serialize_solution(to_solution(report)));
  }
  if (report.status == coupled::Status::kError) {
    err << "error: " << report.message << '\n';
  }
  return report;
}

int cmd_solve(const std::string& path, const SolveFlags& f, std::ostream& out,
              std::ostream& err) {
  coupled::SolveReport report;
  try {
    report = run_solver(parse_problem(read_text_file(path)), f, err);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return error_exit(e);
  }
  if (f.format == "json") {
    if (report.status != coupled::Status::kError) {
      out << serialize_solution(to_solution(report));
    }
  } else {
    report_text(out, report, f.epsilon);
  }
  return status_exit(report);
}

int cmd_verify(const std::string& problem_path,
               const std::string& solution_path, double tol,
               const std::string& format, std::ostream& out,
               std::ostream& err) {
  verify::VerifyResult result;
  try {
    const ProblemSpec spec = parse_problem(read_text_file(problem_path));
    const SolutionFile sol = parse_solution(read_text_file(solution_path));
    result = verify::verify_solution(spec, sol.values, sol.gains, tol);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return error_exit(e);
  }
  const auto& r = result.report;
  if (format == "json") {
    out << "{\"pass\": " << (result.pass ? "true" : "false")
        << ", \"tol\": " << format_number(tol)
        << ", \"res1\": " << format_number(r.res1)
        << ", \"res2\": " << format_number(r.res2)
        << ", \"res_gain\": " << format_number(r.res_gain)
        << ", \"psd1\": " << (r.psd1 ? "true" : "false")
        << ", \"psd2\": " << (r.psd2 ? "true" : "false")
        << ", \"closed_loop_ok\": " << (r.closed_loop_ok ? "true" : "false")
        << "}\n";
  } else {
    out << std::scientific << std::setprecision(3);
    out << "res1: " << r.res1 << "\nres2: " << r.res2
        << "\nres_gain: " << r.res_gain << '\n';
    out.unsetf(std::ios::floatfield);
    out << std::setprecision(6);
    out << "psd1: " << (r.psd1 ? "yes" : "no")
        << "\npsd2: " << (r.psd2 ? "yes" : "no")
        << "\nclosed loop Hurwitz: " << (r.closed_loop_ok ? "yes" : "no")
        << '\n';
    out << "tolerance: " << tol << '\n';
    out << (result.pass ? "PASS" : "FAIL") << '\n';
  }
  return result.pass ? kExitOk : kExitNotConverged;
}

int cmd_example(int id, SolveFlags f, bool epsilon_given, std::ostream& out,
                std::ostream& err) {
  BuiltinExample ex;
  try {
    ex = builtin_example(id);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  if (!epsilon_given) f.epsilon = kExampleEpsilon;

  coupled::SolveReport report;
  try {
    report = run_solver(ex.spec, f, err);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return error_exit(e);
  }
  if (report.status == coupled::Status::kError) {
    if (f.format != "json") report_text(out, report, f.epsilon);
    return kExitNumericError;
  }

  const double d1 = (report.values.X1 - ex.expected.X1).norm();
  const double d2 = (report.values.X2 - ex.expected.X2).norm();
  const bool matched = report.status == coupled::Status::kConverged &&
                       d1 <= ex.match_tol && d2 <= ex.match_tol;

  if (f.format == "json") {
    out << serialize_solution(to_solution(report));
  } else {
    out << "example " << ex.id << ": " << ex.title << '\n';
    out << "published epsilon: 0.001, run epsilon: " << f.epsilon << '\n';
    report_text(out, report, f.epsilon);
    print_matrix(out, "expected X1", ex.expected.X1);
    print_matrix(out, "expected X2", ex.expected.X2);
    out << std::scientific << std::setprecision(3) << "distance: X1 " << d1
        << ", X2 " << d2 << " (tolerance " << ex.match_tol << ")\n";
    out.unsetf(std::ios::floatfield);
    out << std::setprecision(6);
    out << (matched ? "MATCH" : "MISMATCH") << '\n';
  }
  return matched ? kExitOk : kExitNotConverged;
}

int cmd_list(std::ostream& out) {
  out << "id  n  m1  m2  description\n";
  for (int id = 1; id <= kBuiltinExampleCount; ++id) {
    const BuiltinExample ex = builtin_example(id);
    out << std::setw(2) << id << std::setw(3) << ex.spec.dims.n
        << std::setw(4) << ex.spec.dims.m1 << std::setw(4)
        << ex.spec.dims.m2 << "  " << ex.title << '\n';
  }
  return kExitOk;
}

}  // namespace

std::string shortest_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_trace_csv(const std::vector<coupled::TraceEntry>& entries) {
  std::string csv(kTraceHeader);
  csv += '\n';
  for (const auto& e : entries) {
    csv += std::to_string(e.iter);
    for (double v : {e.dx1_sq, e.dx2_sq, e.step_sq, e.res1, e.res2,
                     e.res_gain}) {
      csv += ',';
      csv += shortest_number(v);
    }
    csv += '\n';
  }
  return csv;
}

void write_trace(const std::vector<coupled::TraceEntry>& entries,
                 const std::string& path) {
  write_text_file(path, format_trace_csv(entries));
}

int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Solver for coupled Riccati equations of two-player Nash games",
               "ncare"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  std::string solve_path;
  auto* solve = app.add_subcommand("solve", "solve a problem file");
  solve->add_option("problem", solve_path, "problem JSON file")->required();
  add_solve_flags(solve, solve_flags);

  std::string verify_path, solution_path, verify_format = "text";
  double verify_tol = 1e-8;
  auto* verify = app.add_subcommand("verify", "check a candidate solution");
  verify->add_option("problem", verify_path, "problem JSON file")->required();
  verify->add_option("--solution", solution_path, "solution JSON file")
      ->required();
  verify->add_option("--tol", verify_tol, "residual tolerance")
      ->capture_default_str();
  verify->add_option("--format", verify_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  SolveFlags example_flags;
  int example_id = 0;
  auto* example = app.add_subcommand(
      "example", "solve a builtin example and compare with its published "
                 "solution");
  example->add_option("id", example_id, "example number 1..5")->required();
  add_solve_flags(example, example_flags);

  auto* list = app.add_subcommand("list-examples", "list builtin examples");

  // CLI11 wants argv-style input in reverse order.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  if (solve->parsed()) return cmd_solve(solve_path, solve_flags, out, err);
  if (verify->parsed()) {
    return cmd_verify(verify_path, solution_path, verify_tol, verify_format,
                      out, err);
  }
  if (example->parsed()) {
    const bool eps_given = example->get_option("--epsilon")->count() > 0;
    return cmd_example(example_id, example_flags, eps_given, out, err);
  }
  if (list->parsed()) return cmd_list(out);
  return kExitInputError;
}

}  // namespace ncare::cli
