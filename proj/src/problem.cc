#include "ncare/problem.h"

#include <sstream>
#include <string>

#include "ncare/error.h"

namespace ncare {
namespace {

std::string shape(const Mat& M) {
  return std::to_string(M.rows()) + "x" + std::to_string(M.cols());
}

void expect_shape(const Mat& M, Eigen::Index rows, Eigen::Index cols,
                  const char* name) {
  if (M.rows() != rows || M.cols() != cols) {
    throw SolverError(ErrorCode::kDim,
                      std::string(name) + " is " + shape(M) + ", expected " +
                          std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

Mat ProblemSpec::B() const {
  Mat out(dims.n, dims.m());
  out << B1, B2;
  return out;
}

Mat ProblemSpec::coupling() const {
  const int m1 = dims.m1, m = dims.m();
  Mat M(m, m);
  M.topRows(m1) = R1.topRows(m1);
  M.bottomRows(dims.m2) = R2.bottomRows(dims.m2);
  return M;
}

bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
  return a.dims == b.dims && a.A == b.A && a.B1 == b.B1 && a.B2 == b.B2 &&
         a.Q1 == b.Q1 && a.Q2 == b.Q2 && a.R1 == b.R1 && a.R2 == b.R2;
}

CostBlocks blocks(const Mat& R, const Dims& dims) {
  const int m1 = dims.m1, m2 = dims.m2;
  expect_shape(R, dims.m(), dims.m(), "R");
  return CostBlocks{R.topLeftCorner(m1, m1), R.topRightCorner(m1, m2),
                    R.bottomLeftCorner(m2, m1), R.bottomRightCorner(m2, m2)};
}

Mat GainPair::stacked() const {
  if (Theta1.cols() != Theta2.cols()) {
    throw SolverError(ErrorCode::kDim, "gain blocks have different widths");
  }
  Mat out(Theta1.rows() + Theta2.rows(), Theta1.cols());
  out << Theta1, Theta2;
  return out;
}

GainPair GainPair::split(const Mat& stacked, const Dims& dims) {
  expect_shape(stacked, dims.m(), dims.n, "stacked gain");
  return GainPair{stacked.topRows(dims.m1), stacked.bottomRows(dims.m2)};
}

ValidatedProblem validate(const ProblemSpec& spec, QPsdPolicy q_policy) {
  const Dims& d = spec.dims;
  if (d.n < 1 || d.m1 < 1 || d.m2 < 1) {
    throw SolverError(ErrorCode::kDim, "dimensions must be positive");
  }
  expect_shape(spec.A, d.n, d.n, "A");
  expect_shape(spec.B1, d.n, d.m1, "B1");
  expect_shape(spec.B2, d.n, d.m2, "B2");
  expect_shape(spec.Q1, d.n, d.n, "Q1");
  expect_shape(spec.Q2, d.n, d.n, "Q2");
  expect_shape(spec.R1, d.m(), d.m(), "R1");
  expect_shape(spec.R2, d.m(), d.m(), "R2");

  const std::pair<const Mat*, const char*> symmetric[] = {
      {&spec.Q1, "Q1"}, {&spec.Q2, "Q2"}, {&spec.R1, "R1"}, {&spec.R2, "R2"}};
  for (const auto& [M, name] : symmetric) {
    if (linalg::max_asymmetry(*M) > kSymmetryTol) {
      throw SolverError(ErrorCode::kNotSym, std::string(name) +
                                                " is not symmetric");
    }
  }

  if (!linalg::is_pd(blocks(spec.R1, d).R11, kDefiniteTol)) {
    throw SolverError(ErrorCode::kIndef, "R1_11 is not positive definite");
  }
  if (!linalg::is_pd(blocks(spec.R2, d).R22, kDefiniteTol)) {
    throw SolverError(ErrorCode::kIndef, "R2_22 is not positive definite");
  }

  std::vector<std::string> warnings;
  const std::pair<const Mat*, const char*> psd[] = {{&spec.Q1, "Q1"},
                                                    {&spec.Q2, "Q2"}};
  for (const auto& [M, name] : psd) {
    const double lmin = linalg::min_sym_eigenvalue(*M);
    if (lmin > -kDefiniteTol) continue;
    std::ostringstream msg;
    msg << name << " is not positive semidefinite (min eigenvalue " << lmin
        << ")";
    if (q_policy == QPsdPolicy::kError) {
      throw SolverError(ErrorCode::kIndef, msg.str());
    }
    warnings.push_back(msg.str());
  }
  return ValidatedProblem(spec, std::move(warnings));
}

}  // namespace ncare
