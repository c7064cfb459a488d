#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncare/care.h"
#include "ncare/error.h"
#include "ncare/problem.h"

// Alternating iteration for the coupled Riccati pair. Each sweep solves the
// gain condition jointly, then player 1's reduced Riccati equation, then
// player 2's using player 1's fresh gain, and repeats until the squared
// Frobenius change of (X1, X2) drops below epsilon.

namespace ncare::coupled {

struct IterationConfig {
  double init_scale = 0.5;
  double epsilon = 1e-3;
  int max_iter = 500;
  bool care_refine = true;
  bool record_trace = true;
};

/// Throws ERANGE unless epsilon > 0, max_iter >= 1 and init_scale is finite.
void check_config(const IterationConfig& cfg);

struct TraceEntry {
  int iter = 0;
  double dx1_sq = 0.0;
  double dx2_sq = 0.0;
  double step_sq = 0.0;  // dx1_sq + dx2_sq
  double res1 = 0.0;
  double res2 = 0.0;
  double res_gain = 0.0;
};

enum class Status { kConverged, kMaxIter, kError };

std::string_view to_string(Status s);

struct SolveReport {
  ValuePair values;
  GainPair gains;
  int iterations = 0;
  std::vector<TraceEntry> trace;
  Status status = Status::kError;
  std::optional<ErrorCode> error;
  std::string message;
  /// Coupled residuals at (values, gains).
  double res1 = 0.0, res2 = 0.0, res_gain = 0.0;
};

ValuePair init_iterate(const IterationConfig& cfg, int n);

/// Solves M [Theta1; Theta2] = -[B1' X1; B2' X2]. Throws ECOUPLINGSINGULAR.
GainPair gains_from_values(const ProblemSpec& spec, const ValuePair& vp);

/// Acal = A + B2 T2, Qcal = sym(Q1 + T2' R1_22 T2), Scal = R1_12 T2,
/// B = B1, Rblk = R1_11.
riccati::ReducedCare reduce_player1(const ProblemSpec& spec,
                                    const Mat& theta2);
/// Acal = A + B1 T1, Qcal = sym(Q2 + T1' R2_11 T1), Scal = R2_21 T1,
/// B = B2, Rblk = R2_22.
riccati::ReducedCare reduce_player2(const ProblemSpec& spec,
                                    const Mat& theta1);

/// -Rblk^{-1} (B' X + Scal). Throws EINDEF if Rblk is not positive definite.
Mat gain_from_care(const riccati::ReducedCare& rc, const Mat& X);

/// One pass: joint gains from vp, player 1 solve, player 2 solve. Returns the
/// new values together with the staggered gains the two solves produced.
std::pair<ValuePair, GainPair> sweep(const ProblemSpec& spec,
                                     const ValuePair& vp,
                                     const IterationConfig& cfg);

/// Runs the iteration from init_iterate. Never throws for numeric failures:
/// they are reported as Status::kError with the code attached. Precondition
/// violations on cfg still throw ERANGE.
SolveReport solve_coupled(const ProblemSpec& spec, const IterationConfig& cfg);

/// Same loop from a caller-supplied starting pair.
SolveReport solve_coupled_from(const ProblemSpec& spec, const ValuePair& start,
                               const IterationConfig& cfg);

}  // namespace ncare::coupled
