#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

// Dense real-matrix substrate used by the Riccati solvers. Everything here is
// desk scale (dimensions up to ~64) and double precision throughout.

namespace ncare {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

namespace linalg {

inline constexpr double kPivotThreshold = 1e-12;
inline constexpr double kHurwitzMargin = 1e-9;

struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;

  std::size_t size() const { return eigenvalues.size(); }
  double max_real() const;
  double min_abs_real() const;
};

/// Solves M * Y = rhs by LU with partial pivoting.
///
/// Throws ESINGULAR when a pivot's magnitude is at or below 1e-12 times the
/// largest magnitude found in that column of the original M, and EDIM on
/// shape mismatch.
Mat solve_linear(const Mat& M, const Mat& rhs);

/// Sum of squared entries (Frobenius norm squared).
double frobenius_sq(const Mat& M);

/// All eigenvalues of a square matrix. Throws ENOCONV if the QR sweeps fail.
Spectrum spectrum(const Mat& M);

/// True iff every eigenvalue has real part < -margin.
bool is_hurwitz(const Mat& M, double margin = kHurwitzMargin);

Mat kron(const Mat& lhs, const Mat& rhs);

/// Column-stacking vec(); unvec is its inverse for the given row count.
Vec vec(const Mat& M);
Mat unvec(const Vec& v, Eigen::Index rows);

Mat symmetrize(const Mat& M);

/// Largest |M(i,j) - M(j,i)|.
double max_asymmetry(const Mat& M);

/// Smallest eigenvalue of symmetrize(M).
double min_sym_eigenvalue(const Mat& M);

/// lambda_min(symmetrize(M)) >= -tol.
bool is_psd(const Mat& M, double tol);

/// lambda_min(symmetrize(M)) > tol.
bool is_pd(const Mat& M, double tol);

}  // namespace linalg
}  // namespace ncare
