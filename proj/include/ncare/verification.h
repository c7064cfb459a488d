#pragma once

#include <utility>
#include <vector>

#include "ncare/problem.h"

// Checks that work directly on the coupled equations, without going through
// the per-player reductions used by the solver.

namespace ncare::verify {

inline constexpr double kSolutionPsdTol = 1e-8;

struct ResidualReport {
  double res1 = 0.0;
  double res2 = 0.0;
  double res_gain = 0.0;
  bool psd1 = false;
  bool psd2 = false;
  bool closed_loop_ok = false;

  double max_residual() const;
};

/// res_i = |X_i A + A' X_i + T' R_i T + X_i B T + T' B' X_i + Q_i|_F with
/// B = [B1 B2], T = [Theta1; Theta2], and res_gain = |[B1' X1; B2' X2] + M T|_F.
/// Throws EDIM on inconsistent shapes.
ResidualReport coupled_residual(const ProblemSpec& spec, const ValuePair& vp,
                                const GainPair& gp);

struct VerifyResult {
  bool pass = false;
  ResidualReport report;
};

/// Passes iff every residual is <= tol and both X_i are PSD.
VerifyResult verify_solution(const ProblemSpec& spec, const ValuePair& vp,
                             const GainPair& gp, double tol);

// ---- scalar (n = m1 = m2 = 1) oracle ----

/// The two bivariate quadratics obtained by eliminating the gains from a
/// scalar problem: f_i(x1, x2) = c0 + cx1 x1 + cx2 x2 + c11 x1^2 + c12 x1 x2
/// + c22 x2^2.
struct Quadratic {
  double c0 = 0, cx1 = 0, cx2 = 0, c11 = 0, c12 = 0, c22 = 0;

  double operator()(double x1, double x2) const {
    return c0 + cx1 * x1 + cx2 * x2 + c11 * x1 * x1 + c12 * x1 * x2 +
           c22 * x2 * x2;
  }
  double d1(double x1, double x2) const {
    return cx1 + 2 * c11 * x1 + c12 * x2;
  }
  double d2(double x1, double x2) const {
    return cx2 + c12 * x1 + 2 * c22 * x2;
  }
};

struct ScalarSystem {
  Quadratic f1, f2;
};

/// Throws EDIM unless all dimensions are 1, ECOUPLINGSINGULAR if M is
/// singular.
ScalarSystem scalar_system(const ProblemSpec& spec);

struct OracleOptions {
  double half_width = 50.0;
  double step = 0.05;
  double newton_tol = 1e-12;
  double dedup_tol = 1e-6;
  double accept_tol = 1e-10;
};

/// Candidate cell lower-left indices (i along x1, j along x2) whose corners
/// show a sign change (or zero) for both quadratics. Row-major in j, then i.
using GridCells = std::vector<std::pair<int, int>>;

/// Serial reference scan over the grid.
GridCells scan_cells_serial(const ScalarSystem& sys, const OracleOptions& opt);
/// OpenMP scan over grid rows; returns exactly the serial result.
GridCells scan_cells_parallel(const ScalarSystem& sys,
                              const OracleOptions& opt);

/// All real solution pairs (X1, X2) in the search box: grid scan, Newton
/// polishing, deduplication. Sorted lexicographically.
std::vector<std::pair<double, double>> scalar_oracle(
    const ProblemSpec& spec, const OracleOptions& opt = OracleOptions{});

}  // namespace ncare::verify
