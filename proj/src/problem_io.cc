#include "ncare/problem_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ncare/error.h"

namespace ncare {
namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) {
  throw SolverError(ErrorCode::kParse, what);
}

double as_number(const json& v, const std::string& where) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) parse_fail(where + ": expected a number");
  return v.get<double>();
}

Mat as_matrix(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) parse_fail(std::string("missing field \"") + key + "\"");
  const json& v = *it;
  if (v.is_number()) return Mat::Constant(1, 1, v.get<double>());
  if (!v.is_array() || v.empty()) {
    parse_fail(std::string(key) + ": expected a non-empty array of rows");
  }
  const std::size_t rows = v.size();
  if (!v[0].is_array() || v[0].empty()) {
    parse_fail(std::string(key) + ": row 0 is not a non-empty array");
  }
  const std::size_t cols = v[0].size();
  Mat M(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) {
      parse_fail(std::string(key) + ": row " + std::to_string(i) +
                 " has a different length (ragged rows)");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      M(i, j) = as_number(v[i][j], std::string(key) + "[" + std::to_string(i) +
                                       "][" + std::to_string(j) + "]");
    }
  }
  return M;
}

void check_shape(const Mat& M, Eigen::Index rows, Eigen::Index cols,
                 const char* key) {
  if (M.rows() != rows || M.cols() != cols) {
    parse_fail(std::string(key) + " is " + std::to_string(M.rows()) + "x" +
               std::to_string(M.cols()) + ", expected " +
               std::to_string(rows) + "x" + std::to_string(cols));
  }
}

int as_count(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) parse_fail(std::string("missing field \"") + key + "\"");
  if (!it->is_number_integer()) {
    parse_fail(std::string(key) + ": expected an integer");
  }
  return it->get<int>();
}

json parse_object(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(e.what());
  }
  if (!doc.is_object()) parse_fail("top level is not an object");
  return doc;
}

void append_matrix(std::string& out, const Mat& M) {
  out += '[';
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    if (i) out += ", ";
    out += '[';
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j) out += ", ";
      out += format_number(M(i, j));
    }
    out += ']';
  }
  out += ']';
}

void append_field(std::string& out, const char* key, const Mat& M,
                  bool last = false) {
  out += "  \"";
  out += key;
  out += "\": ";
  append_matrix(out, M);
  out += last ? "\n" : ",\n";
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";  // "-0" would not survive a parse
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ProblemSpec parse_problem(std::string_view text) {
  const json doc = parse_object(text);
  ProblemSpec p;
  p.dims = {as_count(doc, "n"), as_count(doc, "m1"), as_count(doc, "m2")};
  if (p.dims.n < 1 || p.dims.m1 < 1 || p.dims.m2 < 1) {
    parse_fail("n, m1, m2 must be positive");
  }
  const Dims& d = p.dims;
  p.A = as_matrix(doc, "A");
  check_shape(p.A, d.n, d.n, "A");
  p.B1 = as_matrix(doc, "B1");
  check_shape(p.B1, d.n, d.m1, "B1");
  p.B2 = as_matrix(doc, "B2");
  check_shape(p.B2, d.n, d.m2, "B2");
  p.Q1 = as_matrix(doc, "Q1");
  check_shape(p.Q1, d.n, d.n, "Q1");
  p.Q2 = as_matrix(doc, "Q2");
  check_shape(p.Q2, d.n, d.n, "Q2");
  p.R1 = as_matrix(doc, "R1");
  check_shape(p.R1, d.m(), d.m(), "R1");
  p.R2 = as_matrix(doc, "R2");
  check_shape(p.R2, d.m(), d.m(), "R2");
  return p;
}

std::string serialize_problem(const ProblemSpec& spec) {
  std::string out = "{\n";
  out += "  \"n\": " + std::to_string(spec.dims.n) + ",\n";
  out += "  \"m1\": " + std::to_string(spec.dims.m1) + ",\n";
  out += "  \"m2\": " + std::to_string(spec.dims.m2) + ",\n";
  append_field(out, "A", spec.A);
  append_field(out, "B1", spec.B1);
  append_field(out, "B2", spec.B2);
  append_field(out, "Q1", spec.Q1);
  append_field(out, "Q2", spec.Q2);
  append_field(out, "R1", spec.R1);
  append_field(out, "R2", spec.R2, /*last=*/true);
  out += "}\n";
  return out;
}

SolutionFile parse_solution(std::string_view text) {
  const json doc = parse_object(text);
  SolutionFile sol;
  sol.values.X1 = as_matrix(doc, "X1");
  sol.values.X2 = as_matrix(doc, "X2");
  sol.gains.Theta1 = as_matrix(doc, "Theta1");
  sol.gains.Theta2 = as_matrix(doc, "Theta2");
  const Eigen::Index n = sol.values.X1.rows();
  check_shape(sol.values.X1, n, n, "X1");
  check_shape(sol.values.X2, n, n, "X2");
  check_shape(sol.gains.Theta1, sol.gains.Theta1.rows(), n, "Theta1");
  check_shape(sol.gains.Theta2, sol.gains.Theta2.rows(), n, "Theta2");
  sol.iterations = as_count(doc, "iterations");
  const auto res = doc.find("residuals");
  if (res == doc.end() || !res->is_object()) {
    parse_fail("missing object \"residuals\"");
  }
  for (const char* key : {"res1", "res2", "res_gain"}) {
    if (!res->contains(key)) {
      parse_fail(std::string("residuals: missing \"") + key + "\"");
    }
  }
  sol.res1 = as_number(res->at("res1"), "residuals.res1");
  sol.res2 = as_number(res->at("res2"), "residuals.res2");
  sol.res_gain = as_number(res->at("res_gain"), "residuals.res_gain");
  return sol;
}

std::string serialize_solution(const SolutionFile& sol) {
  std::string out = "{\n";
  append_field(out, "X1", sol.values.X1);
  append_field(out, "X2", sol.values.X2);
  append_field(out, "Theta1", sol.gains.Theta1);
  append_field(out, "Theta2", sol.gains.Theta2);
  out += "  \"iterations\": " + std::to_string(sol.iterations) + ",\n";
  out += "  \"residuals\": {\"res1\": " + format_number(sol.res1) +
         ", \"res2\": " + format_number(sol.res2) +
         ", \"res_gain\": " + format_number(sol.res_gain) + "}\n";
  out += "}\n";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SolverError(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SolverError(ErrorCode::kIo, "cannot write " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw SolverError(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace ncare
