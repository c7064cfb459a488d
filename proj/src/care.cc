#include "ncare/care.h"

#include <cmath>
#include <limits>
#include <string>

#include "ncare/error.h"

namespace ncare::riccati {
namespace {

using linalg::symmetrize;

Eigen::LLT<Mat> factor_r(const Mat& R) {
  if (R.rows() != R.cols() || R.rows() == 0) {
    throw SolverError(ErrorCode::kDim, "R block is not square");
  }
  Eigen::LLT<Mat> llt(symmetrize(R));
  if (llt.info() != Eigen::Success || !linalg::is_pd(R, 0.0)) {
    throw SolverError(ErrorCode::kIndef, "R block is not positive definite");
  }
  return llt;
}

void check_shapes(const ReducedCare& rc) {
  const Eigen::Index n = rc.Acal.rows(), m = rc.B.cols();
  if (rc.Acal.cols() != n || rc.B.rows() != n || rc.Qcal.rows() != n ||
      rc.Qcal.cols() != n || rc.Rblk.rows() != m || rc.Rblk.cols() != m ||
      rc.Scal.rows() != m || rc.Scal.cols() != n) {
    throw SolverError(ErrorCode::kDim, "reduced CARE blocks are inconsistent");
  }
}

// Rblk^{-1} (B' X + S)
Mat feedback(const ReducedCare& rc, const Eigen::LLT<Mat>& llt, const Mat& X) {
  return llt.solve(rc.B.transpose() * X + rc.Scal);
}

double residual_with(const ReducedCare& rc, const Eigen::LLT<Mat>& llt,
                     const Mat& X) {
  const Mat K = feedback(rc, llt, X);
  const Mat XBS = X * rc.B + rc.Scal.transpose();
  const Mat res = X * rc.Acal + rc.Acal.transpose() * X + rc.Qcal - XBS * K;
  return res.norm();
}

// Matrix sign function by the scaled Newton iteration Z <- (cZ + (cZ)^-1)/2.
Mat matrix_sign(const Mat& H) {
  constexpr int kMaxIter = 100;
  const double p = static_cast<double>(H.rows());
  Mat Z = H;
  bool scale = true;
  for (int it = 0; it < kMaxIter; ++it) {
    Eigen::PartialPivLU<Mat> lu(Z);
    double c = 1.0;
    if (scale) {
      const double det = std::abs(lu.determinant());
      if (det > 0.0 && std::isfinite(det)) c = std::pow(det, -1.0 / p);
    }
    const Mat next = 0.5 * (c * Z + lu.inverse() / c);
    const double change = (next - Z).lpNorm<1>();
    const double size = next.lpNorm<1>();
    Z = next;
    if (!Z.allFinite()) break;
    // Drop the scaling once close; it would spoil quadratic convergence.
    if (change <= 1e-2 * size) scale = false;
    if (change <= 1e-14 * size) return Z;
  }
  throw SolverError(ErrorCode::kNoConv, "matrix sign iteration did not settle");
}

}  // namespace

EliminatedCare eliminate_cross_term(const ReducedCare& rc) {
  check_shapes(rc);
  const Eigen::LLT<Mat> llt = factor_r(rc.Rblk);
  const Mat RinvS = llt.solve(rc.Scal);
  const Mat RinvBt = llt.solve(rc.B.transpose());
  return EliminatedCare{rc.Acal - rc.B * RinvS,
                        symmetrize(rc.Qcal - rc.Scal.transpose() * RinvS),
                        symmetrize(rc.B * RinvBt)};
}

Mat build_hamiltonian(const Mat& Ahat, const Mat& G, const Mat& Qhat) {
  const Eigen::Index n = Ahat.rows();
  if (Ahat.cols() != n || G.rows() != n || G.cols() != n || Qhat.rows() != n ||
      Qhat.cols() != n) {
    throw SolverError(ErrorCode::kDim, "Hamiltonian blocks must be n x n");
  }
  Mat H(2 * n, 2 * n);
  H << Ahat, -G, -Qhat, -Ahat.transpose();
  return H;
}

StableSubspace stable_subspace(const Mat& H) {
  if (H.rows() != H.cols() || H.rows() % 2 != 0 || H.rows() == 0) {
    throw SolverError(ErrorCode::kDim,
                      "stable_subspace: H must be square of even order");
  }
  const Eigen::Index n2 = H.rows(), n = n2 / 2;

  const linalg::Spectrum spec = linalg::spectrum(H);
  if (spec.min_abs_real() < kImagAxisMargin) {
    throw SolverError(ErrorCode::kImagAxis,
                      "Hamiltonian has an eigenvalue on the imaginary axis");
  }
  Eigen::Index stable = 0;
  for (const auto& z : spec.eigenvalues) stable += z.real() < 0.0 ? 1 : 0;
  if (stable != n) {
    throw SolverError(ErrorCode::kDefect,
                      "stable subspace has dimension " +
                          std::to_string(stable) + ", expected " +
                          std::to_string(n));
  }

  // (I - sign(H)) / 2 projects onto the stable subspace; a rank-revealing QR
  // of it gives an orthonormal basis.
  const Mat P = 0.5 * (Mat::Identity(n2, n2) - matrix_sign(H));
  Eigen::ColPivHouseholderQR<Mat> qr(P);
  const Mat U = qr.householderQ() * Mat::Identity(n2, n);

  return StableSubspace{U.topRows(n), U.bottomRows(n),
                        U.transpose() * H * U};
}

Mat closed_loop(const ReducedCare& rc, const Mat& X) {
  check_shapes(rc);
  const Eigen::LLT<Mat> llt = factor_r(rc.Rblk);
  return rc.Acal - rc.B * feedback(rc, llt, X);
}

double care_residual(const ReducedCare& rc, const Mat& X) {
  check_shapes(rc);
  return residual_with(rc, factor_r(rc.Rblk), X);
}

Mat solve_lyapunov(const Mat& Acl, const Mat& W) {
  const Eigen::Index n = Acl.rows();
  if (Acl.cols() != n || W.rows() != n || W.cols() != n) {
    throw SolverError(ErrorCode::kDim, "solve_lyapunov: shapes disagree");
  }
  const Mat I = Mat::Identity(n, n);
  const Mat At = Acl.transpose();
  const Mat K = linalg::kron(I, At) + linalg::kron(At, I);
  const Vec x = linalg::solve_linear(K, -linalg::vec(W));
  return symmetrize(linalg::unvec(x, n));
}

CareSolution kleinman_refine(const ReducedCare& rc, const Mat& X0, double tol,
                             int max_steps) {
  check_shapes(rc);
  const Eigen::LLT<Mat> llt = factor_r(rc.Rblk);
  if (!linalg::is_hurwitz(rc.Acal - rc.B * feedback(rc, llt, X0))) {
    throw SolverError(ErrorCode::kNoStab,
                      "Kleinman start is not stabilizing");
  }

  CareSolution best;
  best.residual = std::numeric_limits<double>::infinity();
  Mat X = X0;
  for (int step = 1; step <= std::max(1, max_steps); ++step) {
    const Mat K = feedback(rc, llt, X);
    const Mat Aj = rc.Acal - rc.B * K;
    if (!linalg::is_hurwitz(Aj)) {
      throw SolverError(ErrorCode::kNoStab,
                        "Kleinman iterate " + std::to_string(step) +
                            " lost the Hurwitz property");
    }
    const Mat W = rc.Qcal + K.transpose() * rc.Rblk * K -
                  rc.Scal.transpose() * K - K.transpose() * rc.Scal;
    X = solve_lyapunov(Aj, W);
    const double res = residual_with(rc, llt, X);
    if (res < best.residual) {
      best.X = X;
      best.residual = res;
      best.refine_steps = step;
    }
    const double scale = 1.0 + X.norm();
    if (res <= tol * scale * scale) break;
  }

  best.closed_loop = rc.Acal - rc.B * feedback(rc, llt, best.X);
  if (!linalg::is_hurwitz(best.closed_loop)) {
    throw SolverError(ErrorCode::kNoStab,
                      "refined solution is not stabilizing");
  }
  return best;
}

CareSolution solve_care(const ReducedCare& rc, const CareOptions& opts) {
  const EliminatedCare el = eliminate_cross_term(rc);
  const StableSubspace ss =
      stable_subspace(build_hamiltonian(el.Ahat, el.G, el.Qhat));
  // X U1 = U2  <=>  U1' X' = U2'
  const Mat X = symmetrize(
      linalg::solve_linear(ss.U1.transpose(), ss.U2.transpose()).transpose());

  if (opts.refine) {
    return kleinman_refine(rc, X, opts.refine_tol, opts.max_refine_steps);
  }
  CareSolution sol;
  sol.X = X;
  sol.closed_loop = closed_loop(rc, X);
  sol.residual = care_residual(rc, X);
  if (!linalg::is_hurwitz(sol.closed_loop)) {
    throw SolverError(ErrorCode::kNoStab,
                      "subspace solution is not stabilizing");
  }
  return sol;
}

}  // namespace ncare::riccati
