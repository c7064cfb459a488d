#pragma once

#include "ncare/matrix.h"

// Single continuous-time algebraic Riccati equation with cross term
//
//   X A + A' X + Q - (X B + S') R^{-1} (B' X + S) = 0,
//
// solved for its symmetric stabilizing solution. The coupled solver reduces
// each player's equation to this form.

namespace ncare::riccati {

inline constexpr double kImagAxisMargin = 1e-9;

struct ReducedCare {
  Mat Acal;  // n x n
  Mat B;     // n x m
  Mat Qcal;  // n x n, symmetric
  Mat Rblk;  // m x m, symmetric positive definite
  Mat Scal;  // m x n
};

/// Completed-square form X Ahat + Ahat' X + Qhat - X G X = 0.
struct EliminatedCare {
  Mat Ahat, Qhat, G;
};

/// Ahat = A - B R^{-1} S, Qhat = sym(Q - S' R^{-1} S), G = sym(B R^{-1} B').
/// Throws EINDEF if Rblk is not positive definite.
EliminatedCare eliminate_cross_term(const ReducedCare& rc);

/// H = [[Ahat, -G], [-Qhat, -Ahat']].
Mat build_hamiltonian(const Mat& Ahat, const Mat& G, const Mat& Qhat);

/// Basis [U1; U2] of the stable invariant subspace of H, with
/// H [U1; U2] = [U1; U2] W.
struct StableSubspace {
  Mat U1, U2, W;
};

/// Throws EIMAGAXIS if an eigenvalue of H has |Re| < 1e-9, EDEFECT if the
/// number of stable eigenvalues is not half the dimension, ENOCONV if the sign
/// iteration stalls.
StableSubspace stable_subspace(const Mat& H);

struct CareOptions {
  bool refine = true;
  double refine_tol = 1e-11;
  int max_refine_steps = 20;
};

struct CareSolution {
  Mat X;
  Mat closed_loop;
  double residual = 0.0;
  int refine_steps = 0;
};

/// Acal - B Rblk^{-1} (B' X + Scal).
Mat closed_loop(const ReducedCare& rc, const Mat& X);

/// Frobenius norm of the Riccati residual at X (cross-term form).
double care_residual(const ReducedCare& rc, const Mat& X);

/// Stabilizing solution via the Hamiltonian stable subspace, optionally
/// polished by Newton-Kleinman. Throws ESINGULAR if U1 is singular, ENOSTAB if
/// the result does not stabilize, and propagates stable_subspace errors.
CareSolution solve_care(const ReducedCare& rc,
                        const CareOptions& opts = CareOptions{});

/// Solves Acl' X + X Acl + W = 0 through the Kronecker-vectorized system
/// (I (x) Acl' + Acl' (x) I) vec(X) = -vec(W). Output is symmetrized.
/// Throws ESINGULAR when Acl has eigenvalues summing to ~0.
Mat solve_lyapunov(const Mat& Acl, const Mat& W);

/// Newton-Kleinman iteration from a stabilizing X0. Always takes at least one
/// step; stops once the residual is <= tol * (1 + |X|_F)^2 or after
/// max_steps. Throws ENOSTAB if an iterate's closed loop is not Hurwitz.
CareSolution kleinman_refine(const ReducedCare& rc, const Mat& X0,
                             double tol = 1e-11, int max_steps = 20);

}  // namespace ncare::riccati
