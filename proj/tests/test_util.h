#pragma once

#include <random>

#include "ncare/care.h"
#include "ncare/matrix.h"
#include "ncare/problem.h"

namespace ncare::testing {

inline Mat random_matrix(std::mt19937& rng, Eigen::Index rows,
                         Eigen::Index cols, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Mat M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = dist(rng);
  return M;
}

/// L L' + shift I, symmetric positive definite.
inline Mat random_spd(std::mt19937& rng, Eigen::Index n, double shift = 0.1) {
  const Mat L = random_matrix(rng, n, n);
  return L * L.transpose() + shift * Mat::Identity(n, n);
}

/// Shifts a random matrix so its spectral abscissa is -margin.
inline Mat random_hurwitz(std::mt19937& rng, Eigen::Index n,
                          double margin = 0.5) {
  const Mat A = random_matrix(rng, n, n);
  const double shift = linalg::spectrum(A).max_real() + margin;
  return A - shift * Mat::Identity(n, n);
}

/// A random reduced CARE with positive definite completed-square Q, so a
/// stabilizing solution exists (generic B is controllable). With
/// cross_term = false the S block is zero.
inline riccati::ReducedCare random_care(std::mt19937& rng, int n, int m,
                                        bool cross_term) {
  riccati::ReducedCare rc;
  rc.Acal = random_matrix(rng, n, n);
  rc.B = random_matrix(rng, n, m);
  rc.Rblk = random_spd(rng, m, 0.5);
  rc.Scal = cross_term ? random_matrix(rng, m, n, 0.5) : Mat::Zero(m, n);
  const Mat Qhat = random_spd(rng, n, 0.2);
  rc.Qcal = linalg::symmetrize(
      Qhat + rc.Scal.transpose() * rc.Rblk.llt().solve(rc.Scal));
  return rc;
}

/// Random scalar problem with R1_11, R2_22 > 0.
inline ProblemSpec random_scalar_problem(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.5, 2.0);
  ProblemSpec p;
  p.dims = {1, 1, 1};
  p.A = Mat::Constant(1, 1, 1.5 * u(rng));
  p.B1 = Mat::Constant(1, 1, pos(rng));
  p.B2 = Mat::Constant(1, 1, pos(rng));
  p.Q1 = Mat::Constant(1, 1, 0.5 + 2.5 * (u(rng) + 1.0) / 2.0);
  p.Q2 = Mat::Constant(1, 1, 0.5 + 2.5 * (u(rng) + 1.0) / 2.0);
  const auto cost = [&](bool first) {
    const double own = pos(rng), other = 0.5 * pos(rng) - 0.25;
    const double cross = 0.2 * u(rng);
    Mat R(2, 2);
    if (first) {
      R << own, cross, cross, other * other;
    } else {
      R << other * other, cross, cross, own;
    }
    return R;
  };
  p.R1 = cost(true);
  p.R2 = cost(false);
  return p;
}

}  // namespace ncare::testing
