#include "ncare/coupled.h"

#include <cmath>

#include "ncare/verification.h"

namespace ncare::coupled {
namespace {

using linalg::frobenius_sq;
using linalg::symmetrize;

void fill_residuals(const ProblemSpec& spec, SolveReport& report) {
  const auto r = verify::coupled_residual(spec, report.values, report.gains);
  report.res1 = r.res1;
  report.res2 = r.res2;
  report.res_gain = r.res_gain;
}

}  // namespace

void check_config(const IterationConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) {
    throw SolverError(ErrorCode::kRange, "epsilon must be positive");
  }
  if (cfg.max_iter < 1) {
    throw SolverError(ErrorCode::kRange, "max_iter must be at least 1");
  }
  if (!std::isfinite(cfg.init_scale)) {
    throw SolverError(ErrorCode::kRange, "init_scale must be finite");
  }
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kConverged: return "converged";
    case Status::kMaxIter: return "max-iter";
    case Status::kError: return "error";
  }
  return "unknown";
}

ValuePair init_iterate(const IterationConfig& cfg, int n) {
  const Mat X = cfg.init_scale * Mat::Identity(n, n);
  return ValuePair{X, X};
}

GainPair gains_from_values(const ProblemSpec& spec, const ValuePair& vp) {
  Mat rhs(spec.dims.m(), spec.dims.n);
  rhs << spec.B1.transpose() * vp.X1, spec.B2.transpose() * vp.X2;
  try {
    return GainPair::split(-linalg::solve_linear(spec.coupling(), rhs),
                           spec.dims);
  } catch (const SolverError& e) {
    if (e.code() != ErrorCode::kSingular) throw;
    throw SolverError(ErrorCode::kCouplingSingular,
                      "coupling matrix of the gain condition is singular");
  }
}

riccati::ReducedCare reduce_player1(const ProblemSpec& spec,
                                    const Mat& theta2) {
  const CostBlocks r = blocks(spec.R1, spec.dims);
  return riccati::ReducedCare{
      spec.A + spec.B2 * theta2, spec.B1,
      symmetrize(spec.Q1 + theta2.transpose() * r.R22 * theta2), r.R11,
      r.R12 * theta2};
}

riccati::ReducedCare reduce_player2(const ProblemSpec& spec,
                                    const Mat& theta1) {
  const CostBlocks r = blocks(spec.R2, spec.dims);
  return riccati::ReducedCare{
      spec.A + spec.B1 * theta1, spec.B2,
      symmetrize(spec.Q2 + theta1.transpose() * r.R11 * theta1), r.R22,
      r.R21 * theta1};
}

Mat gain_from_care(const riccati::ReducedCare& rc, const Mat& X) {
  Eigen::LLT<Mat> llt(rc.Rblk);
  if (llt.info() != Eigen::Success || !linalg::is_pd(rc.Rblk, 0.0)) {
    throw SolverError(ErrorCode::kIndef, "R block is not positive definite");
  }
  return -llt.solve(rc.B.transpose() * X + rc.Scal);
}

std::pair<ValuePair, GainPair> sweep(const ProblemSpec& spec,
                                     const ValuePair& vp,
                                     const IterationConfig& cfg) {
  const riccati::CareOptions care_opts{.refine = cfg.care_refine};
  GainPair gains = gains_from_values(spec, vp);

  const riccati::ReducedCare p1 = reduce_player1(spec, gains.Theta2);
  ValuePair next;
  next.X1 = riccati::solve_care(p1, care_opts).X;
  gains.Theta1 = gain_from_care(p1, next.X1);

  const riccati::ReducedCare p2 = reduce_player2(spec, gains.Theta1);
  next.X2 = riccati::solve_care(p2, care_opts).X;
  gains.Theta2 = gain_from_care(p2, next.X2);

  return {std::move(next), std::move(gains)};
}

SolveReport solve_coupled(const ProblemSpec& spec, const IterationConfig& cfg) {
  check_config(cfg);
  return solve_coupled_from(spec, init_iterate(cfg, spec.dims.n), cfg);
}

SolveReport solve_coupled_from(const ProblemSpec& spec, const ValuePair& start,
                               const IterationConfig& cfg) {
  check_config(cfg);
  SolveReport report;
  report.values = start;
  report.status = Status::kMaxIter;
  try {
    for (int k = 1; k <= cfg.max_iter; ++k) {
      auto [next, staggered] = sweep(spec, report.values, cfg);
      TraceEntry e;
      e.iter = k;
      e.dx1_sq = frobenius_sq(report.values.X1 - next.X1);
      e.dx2_sq = frobenius_sq(report.values.X2 - next.X2);
      e.step_sq = e.dx1_sq + e.dx2_sq;

      report.values = std::move(next);
      report.gains = std::move(staggered);
      report.iterations = k;

      if (cfg.record_trace) {
        const GainPair joint = gains_from_values(spec, report.values);
        const auto r = verify::coupled_residual(spec, report.values, joint);
        e.res1 = r.res1;
        e.res2 = r.res2;
        e.res_gain = r.res_gain;
        report.trace.push_back(e);
      }
      if (e.step_sq < cfg.epsilon) {
        report.status = Status::kConverged;
        break;
      }
    }
    if (report.status == Status::kConverged) {
      report.gains = gains_from_values(spec, report.values);
    }
    fill_residuals(spec, report);
  } catch (const SolverError& err) {
    report.status = Status::kError;
    report.error = err.code();
    report.message = err.what();
  }
  return report;
}

}  // namespace ncare::coupled
