#include "ncare/matrix.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ncare/error.h"

namespace ncare::linalg {

double Spectrum::max_real() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& z : eigenvalues) m = std::max(m, z.real());
  return m;
}

double Spectrum::min_abs_real() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& z : eigenvalues) m = std::min(m, std::abs(z.real()));
  return m;
}

Mat solve_linear(const Mat& M, const Mat& rhs) {
  const Eigen::Index k = M.rows();
  if (M.cols() != k) {
    throw SolverError(ErrorCode::kDim, "solve_linear: matrix is not square");
  }
  if (rhs.rows() != k) {
    throw SolverError(ErrorCode::kDim,
                      "solve_linear: right-hand side has " +
                          std::to_string(rhs.rows()) + " rows, expected " +
                          std::to_string(k));
  }

  // Per-column scale of the original matrix, used for the singularity test.
  Vec col_scale(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    col_scale(j) = M.col(j).cwiseAbs().maxCoeff();
  }

  Mat lu = M;
  Mat y = rhs;
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::Index pivot_row = j;
    lu.col(j).tail(k - j).cwiseAbs().maxCoeff(&pivot_row);
    pivot_row += j;
    const double pivot = lu(pivot_row, j);
    if (std::abs(pivot) <= kPivotThreshold * col_scale(j)) {
      throw SolverError(ErrorCode::kSingular,
                        "solve_linear: pivot " + std::to_string(j) +
                            " below relative threshold");
    }
    if (pivot_row != j) {
      lu.row(j).swap(lu.row(pivot_row));
      y.row(j).swap(y.row(pivot_row));
    }
    for (Eigen::Index i = j + 1; i < k; ++i) {
      const double f = lu(i, j) / lu(j, j);
      if (f == 0.0) continue;
      lu.row(i).tail(k - j - 1) -= f * lu.row(j).tail(k - j - 1);
      y.row(i) -= f * y.row(j);
    }
  }
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    for (Eigen::Index j = i + 1; j < k; ++j) y.row(i) -= lu(i, j) * y.row(j);
    y.row(i) /= lu(i, i);
  }
  return y;
}

double frobenius_sq(const Mat& M) {
  // Row-major accumulation; the order is fixed so transposes agree exactly.
  double s = 0.0;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) s += M(i, j) * M(i, j);
  return s;
}

Spectrum spectrum(const Mat& M) {
  if (M.rows() != M.cols()) {
    throw SolverError(ErrorCode::kDim, "spectrum: matrix is not square");
  }
  Spectrum out;
  if (M.rows() == 0) return out;
  Eigen::EigenSolver<Mat> es(M, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw SolverError(ErrorCode::kNoConv,
                      "spectrum: eigenvalue iteration did not converge");
  }
  const auto& ev = es.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  return out;
}

bool is_hurwitz(const Mat& M, double margin) {
  return spectrum(M).max_real() < -margin;
}

Mat kron(const Mat& lhs, const Mat& rhs) {
  Mat out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i)
    for (Eigen::Index j = 0; j < lhs.cols(); ++j)
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) =
          lhs(i, j) * rhs;
  return out;
}

Vec vec(const Mat& M) {
  return Eigen::Map<const Vec>(M.data(), M.size());
}

Mat unvec(const Vec& v, Eigen::Index rows) {
  if (rows <= 0 || v.size() % rows != 0) {
    throw SolverError(ErrorCode::kDim, "unvec: length not divisible by rows");
  }
  return Eigen::Map<const Mat>(v.data(), rows, v.size() / rows);
}

Mat symmetrize(const Mat& M) {
  if (M.rows() != M.cols()) {
    throw SolverError(ErrorCode::kDim, "symmetrize: matrix is not square");
  }
  return 0.5 * (M + M.transpose());
}

double max_asymmetry(const Mat& M) {
  if (M.rows() != M.cols()) {
    throw SolverError(ErrorCode::kDim, "max_asymmetry: matrix is not square");
  }
  if (M.size() == 0) return 0.0;
  return (M - M.transpose()).cwiseAbs().maxCoeff();
}

double min_sym_eigenvalue(const Mat& M) {
  const Mat S = symmetrize(M);
  if (S.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Mat> es(S, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw SolverError(ErrorCode::kNoConv,
                      "min_sym_eigenvalue: symmetric eigensolver failed");
  }
  return es.eigenvalues().minCoeff();
}

bool is_psd(const Mat& M, double tol) { return min_sym_eigenvalue(M) >= -tol; }

bool is_pd(const Mat& M, double tol) { return min_sym_eigenvalue(M) > tol; }

}  // namespace ncare::linalg
