#include <chrono>
#include <cmath>

#include <gtest/gtest.h>

#include "ncare/coupled.h"
#include "ncare/examples.h"
#include "ncare/verification.h"

namespace ncare::coupled {
namespace {

Mat S(double v) { return Mat::Constant(1, 1, v); }

constexpr double kEx1FirstX1 = 2.350781059358212;
constexpr double kEx1FirstX2 = 0.8053507517842924;

TEST(InitIterate, Defaults) {
  const ValuePair v1 = init_iterate(IterationConfig{}, 1);
  EXPECT_EQ(v1.X1(0, 0), 0.5);
  EXPECT_EQ(v1.X2(0, 0), 0.5);
  const ValuePair v3 = init_iterate(IterationConfig{}, 3);
  EXPECT_EQ(v3.X1, 0.5 * Mat::Identity(3, 3));
  EXPECT_EQ(v3.X2, 0.5 * Mat::Identity(3, 3));
  const ValuePair z = init_iterate(IterationConfig{.init_scale = 0.0}, 2);
  EXPECT_EQ(z.X1, Mat::Zero(2, 2));
}

TEST(GainsFromValues, ExampleOneSolution) {
  const ProblemSpec p = builtin_example(1).spec;
  const GainPair g = gains_from_values(p, {S(2), S(1)});
  EXPECT_DOUBLE_EQ(g.Theta1(0, 0), -2.0);
  EXPECT_DOUBLE_EQ(g.Theta2(0, 0), -0.5);
}

TEST(GainsFromValues, ExampleThreeSolution) {
  const BuiltinExample ex = builtin_example(3);
  const GainPair g = gains_from_values(ex.spec, ex.expected);
  EXPECT_LT((g.Theta1 + Mat::Identity(2, 2)).norm(), 1e-15);
  EXPECT_NEAR(g.Theta2(0, 0), -0.5, 1e-15);
  EXPECT_NEAR(g.Theta2(0, 1), 0.0, 1e-15);
}

TEST(GainsFromValues, ZeroValuesGiveZeroGains) {
  const ProblemSpec p = builtin_example(4).spec;
  const GainPair g =
      gains_from_values(p, {Mat::Zero(2, 2), Mat::Zero(2, 2)});
  EXPECT_EQ(g.stacked(), Mat::Zero(4, 2));
}

TEST(GainsFromValues, SingularCoupling) {
  ProblemSpec p = builtin_example(1).spec;
  p.R2 << 1, 0, 0, 0;  // second row of M vanishes
  try {
    gains_from_values(p, {S(1), S(1)});
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCouplingSingular);
  }
}

TEST(Reduce, ExampleOnePlayerOne) {
  const riccati::ReducedCare rc =
      reduce_player1(builtin_example(1).spec, S(-0.25));
  EXPECT_EQ(rc.Acal(0, 0), 0.75);
  EXPECT_EQ(rc.Qcal(0, 0), 2.0);
  EXPECT_EQ(rc.Scal(0, 0), 0.0);
  EXPECT_EQ(rc.Rblk(0, 0), 1.0);
}

TEST(Reduce, ExampleFourHasNoPlayerOneCrossTerm) {
  const ProblemSpec p = builtin_example(4).spec;
  Mat theta2(2, 2);
  theta2 << 0.3, -1.2, 2.0, 0.7;
  const riccati::ReducedCare rc = reduce_player1(p, theta2);
  EXPECT_EQ(rc.Scal, Mat::Zero(2, 2));
  Mat r122(2, 2);
  r122 << 1, 0.5, 0.5, 1;
  EXPECT_LT((rc.Qcal - (p.Q1 + theta2.transpose() * r122 * theta2)).norm(),
            1e-14);
}

TEST(Reduce, ZeroGainLeavesDataUnchanged) {
  const ProblemSpec p = builtin_example(3).spec;
  const auto rc1 = reduce_player1(p, Mat::Zero(1, 2));
  EXPECT_EQ(rc1.Acal, p.A);
  EXPECT_EQ(rc1.Qcal, p.Q1);
  EXPECT_EQ(rc1.Scal, Mat::Zero(2, 2));
  const auto rc2 = reduce_player2(p, Mat::Zero(2, 2));
  EXPECT_EQ(rc2.Acal, p.A);
  EXPECT_EQ(rc2.Qcal, p.Q2);
  EXPECT_EQ(rc2.Scal, Mat::Zero(1, 2));
}

TEST(Reduce, ExampleThreePlayerTwoBlocks) {
  const ProblemSpec p = builtin_example(3).spec;
  const Mat theta1 = -Mat::Identity(2, 2);
  const auto rc = reduce_player2(p, theta1);
  // R2_21 = (0, 1), R2_11 = 2 I.
  Mat s(1, 2);
  s << 0, -1;
  EXPECT_EQ(rc.Scal, s);
  EXPECT_EQ(rc.Qcal, p.Q2 + 2.0 * Mat::Identity(2, 2));
  EXPECT_EQ(rc.Rblk, S(2));
}

TEST(Reduce, ExampleOnePlayerTwoFirstSweep) {
  const auto rc = reduce_player2(builtin_example(1).spec, S(-kEx1FirstX1));
  EXPECT_NEAR(rc.Acal(0, 0), -1.3507810593582121, 1e-15);
  EXPECT_EQ(rc.Qcal(0, 0), 2.5);
  EXPECT_EQ(rc.Scal(0, 0), 0.0);
}

TEST(GainFromCare, ExampleOneConverged) {
  const ProblemSpec p = builtin_example(1).spec;
  EXPECT_DOUBLE_EQ(gain_from_care(reduce_player1(p, S(-0.5)), S(2))(0, 0),
                   -2.0);
  EXPECT_DOUBLE_EQ(gain_from_care(reduce_player2(p, S(-2)), S(1))(0, 0), -0.5);
  EXPECT_EQ(gain_from_care(reduce_player1(p, S(0)), S(0))(0, 0), 0.0);
}

TEST(Sweep, ExampleOneFirstSweep) {
  const ProblemSpec p = builtin_example(1).spec;
  const auto [v, g] = sweep(p, {S(0.5), S(0.5)}, IterationConfig{});
  EXPECT_NEAR(v.X1(0, 0), kEx1FirstX1, 1e-12);
  EXPECT_NEAR(v.X2(0, 0), kEx1FirstX2, 1e-12);
  EXPECT_NEAR(g.Theta1(0, 0), -kEx1FirstX1, 1e-12);
  EXPECT_NEAR(g.Theta2(0, 0), -kEx1FirstX2 / 2, 1e-12);
}

TEST(Sweep, PublishedSolutionsAreFixedPoints) {
  for (int id = 1; id <= kBuiltinExampleCount; ++id) {
    const BuiltinExample ex = builtin_example(id);
    const auto [v, g] = sweep(ex.spec, ex.expected, IterationConfig{});
    const double tol = id == 5 ? 1e-2 : 1e-8;
    EXPECT_LE((v.X1 - ex.expected.X1).norm(), tol) << "example " << id;
    EXPECT_LE((v.X2 - ex.expected.X2).norm(), tol) << "example " << id;
    EXPECT_LE(linalg::max_asymmetry(v.X1), 1e-10);
    EXPECT_LE(linalg::max_asymmetry(v.X2), 1e-10);
  }
}

TEST(Sweep, ExampleTwoReducedCosts) {
  const BuiltinExample ex = builtin_example(2);
  const GainPair g = gains_from_values(ex.spec, ex.expected);
  Mat q1 = Mat::Zero(2, 2), q2 = Mat::Zero(2, 2);
  q1.diagonal() << 3, 3;
  q2.diagonal() << 4, 2.5;
  EXPECT_EQ(reduce_player1(ex.spec, g.Theta2).Qcal, q1);
  EXPECT_EQ(reduce_player2(ex.spec, g.Theta1).Qcal, q2);
}

TEST(SolveCoupled, ExampleOneTight) {
  IterationConfig cfg;
  cfg.epsilon = 1e-16;
  cfg.max_iter = 200;
  const SolveReport r = solve_coupled(builtin_example(1).spec, cfg);
  ASSERT_EQ(r.status, Status::kConverged) << r.message;
  EXPECT_NEAR(r.values.X1(0, 0), 2.0, 1e-6);
  EXPECT_NEAR(r.values.X2(0, 0), 1.0, 1e-6);
  EXPECT_EQ(static_cast<int>(r.trace.size()), r.iterations);
  EXPECT_LT(r.trace.back().step_sq, cfg.epsilon);
}

TEST(SolveCoupled, ExampleFiveCloseToPublished) {
  IterationConfig cfg;
  cfg.epsilon = 1e-16;
  const BuiltinExample ex = builtin_example(5);
  const SolveReport r = solve_coupled(ex.spec, cfg);
  ASSERT_EQ(r.status, Status::kConverged) << r.message;
  EXPECT_LE((r.values.X1 - ex.expected.X1).norm(), 1e-2);
  EXPECT_LE((r.values.X2 - ex.expected.X2).norm(), 1e-2);
}

TEST(SolveCoupled, HugeEpsilonStopsAfterOneSweep) {
  IterationConfig cfg;
  cfg.epsilon = 1e6;
  const SolveReport r = solve_coupled(builtin_example(3).spec, cfg);
  EXPECT_EQ(r.status, Status::kConverged);
  EXPECT_EQ(r.iterations, 1);
}

TEST(SolveCoupled, TraceBookkeeping) {
  const SolveReport r = solve_coupled(builtin_example(1).spec, IterationConfig{});
  ASSERT_EQ(r.status, Status::kConverged);
  ASSERT_FALSE(r.trace.empty());
  EXPECT_DOUBLE_EQ(r.trace[0].dx1_sq, 3.425390529679106);
  EXPECT_NEAR(r.trace[0].dx2_sq, 0.09323908161523253, 1e-14);
  for (std::size_t k = 0; k < r.trace.size(); ++k) {
    const TraceEntry& e = r.trace[k];
    EXPECT_EQ(e.iter, static_cast<int>(k) + 1);
    EXPECT_EQ(e.step_sq, e.dx1_sq + e.dx2_sq);
    // Stops at the first step below epsilon, never earlier.
    if (k + 1 < r.trace.size()) EXPECT_GE(e.step_sq, 1e-3);
  }
  EXPECT_LT(r.trace.back().step_sq, 1e-3);
}

TEST(SolveCoupled, MaxIterStatus) {
  IterationConfig cfg;
  cfg.epsilon = 1e-30;
  cfg.max_iter = 3;
  const SolveReport r = solve_coupled(builtin_example(1).spec, cfg);
  EXPECT_EQ(r.status, Status::kMaxIter);
  EXPECT_EQ(r.iterations, 3);
}

TEST(SolveCoupled, NumericFailureIsReportedNotThrown) {
  ProblemSpec p = builtin_example(1).spec;
  p.R2 << 1, 0, 0, 0;  // singular coupling matrix, R2_22 = 0
  const SolveReport r = solve_coupled(p, IterationConfig{});
  EXPECT_EQ(r.status, Status::kError);
  ASSERT_TRUE(r.error.has_value());
  EXPECT_EQ(*r.error, ErrorCode::kCouplingSingular);
}

TEST(SolveCoupled, BadConfig) {
  const ProblemSpec p = builtin_example(1).spec;
  EXPECT_THROW(solve_coupled(p, IterationConfig{.epsilon = 0.0}), SolverError);
  EXPECT_THROW(solve_coupled(p, IterationConfig{.max_iter = 0}), SolverError);
  EXPECT_THROW(
      solve_coupled(p, IterationConfig{.init_scale = std::nan("")}),
      SolverError);
}

TEST(SolveCoupled, ConvergedReportsSatisfyJointGainCondition) {
  for (int id = 1; id <= kBuiltinExampleCount; ++id) {
    const BuiltinExample ex = builtin_example(id);
    IterationConfig cfg;
    cfg.epsilon = 1e-24;
    const SolveReport r = solve_coupled(ex.spec, cfg);
    ASSERT_EQ(r.status, Status::kConverged) << "example " << id;
    Mat lhs(ex.spec.dims.m(), ex.spec.dims.n);
    lhs << ex.spec.B1.transpose() * r.values.X1,
        ex.spec.B2.transpose() * r.values.X2;
    EXPECT_LE((lhs + ex.spec.coupling() * r.gains.stacked()).norm(), 1e-8);
    EXPECT_TRUE(linalg::is_hurwitz(ex.spec.A + ex.spec.B() * r.gains.stacked()))
        << "example " << id;
    EXPECT_LE(linalg::max_asymmetry(r.values.X1), 1e-10);
    EXPECT_LE(linalg::max_asymmetry(r.values.X2), 1e-10);
  }
}

TEST(SolveCoupled, TraceTailIsNonincreasing) {
  // Empirical: linear convergence makes the last steps shrink monotonically.
  for (int id = 1; id <= kBuiltinExampleCount; ++id) {
    IterationConfig cfg;
    cfg.epsilon = 1e-16;
    const SolveReport r = solve_coupled(builtin_example(id).spec, cfg);
    ASSERT_EQ(r.status, Status::kConverged);
    const std::size_t n = r.trace.size();
    for (std::size_t k = n > 5 ? n - 5 : 1; k < n; ++k) {
      EXPECT_LE(r.trace[k].step_sq, r.trace[k - 1].step_sq)
          << "example " << id << " iter " << k + 1;
    }
  }
}

TEST(SolveCoupled, DeterministicAcrossRuns) {
  const ProblemSpec p = builtin_example(5).spec;
  const SolveReport a = solve_coupled(p, IterationConfig{});
  const SolveReport b = solve_coupled(p, IterationConfig{});
  EXPECT_EQ(a.values.X1, b.values.X1);
  EXPECT_EQ(a.iterations, b.iterations);
}

}  // namespace
}  // namespace ncare::coupled
