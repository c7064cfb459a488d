#include "ncare/verification.h"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ncare/error.h"

namespace ncare::verify {
namespace {

void check_dims(const ProblemSpec& spec, const ValuePair& vp,
                const GainPair& gp) {
  const Dims& d = spec.dims;
  const auto bad = [](const Mat& M, int r, int c) {
    return M.rows() != r || M.cols() != c;
  };
  if (bad(vp.X1, d.n, d.n) || bad(vp.X2, d.n, d.n) ||
      bad(gp.Theta1, d.m1, d.n) || bad(gp.Theta2, d.m2, d.n)) {
    throw SolverError(ErrorCode::kDim,
                      "candidate solution does not match problem dimensions");
  }
}

int grid_points(const OracleOptions& opt) {
  return static_cast<int>(std::lround(2.0 * opt.half_width / opt.step)) + 1;
}

// Appends the candidate cells of grid row j (between x2 = y_j and y_{j+1}).
void scan_row(const ScalarSystem& sys, const OracleOptions& opt, int j,
              int points, GridCells& out) {
  const double lo = -opt.half_width;
  const double y0 = lo + j * opt.step, y1 = lo + (j + 1) * opt.step;
  double a1 = sys.f1(lo, y0), a2 = sys.f2(lo, y0);
  double b1 = sys.f1(lo, y1), b2 = sys.f2(lo, y1);
  for (int i = 0; i + 1 < points; ++i) {
    const double x = lo + (i + 1) * opt.step;
    const double c1 = sys.f1(x, y0), c2 = sys.f2(x, y0);
    const double d1 = sys.f1(x, y1), d2 = sys.f2(x, y1);
    const bool f1_changes = std::min({a1, b1, c1, d1}) <= 0.0 &&
                            std::max({a1, b1, c1, d1}) >= 0.0;
    const bool f2_changes = std::min({a2, b2, c2, d2}) <= 0.0 &&
                            std::max({a2, b2, c2, d2}) >= 0.0;
    if (f1_changes && f2_changes) out.emplace_back(i, j);
    a1 = c1, a2 = c2, b1 = d1, b2 = d2;
  }
}

bool newton_polish(const ScalarSystem& sys, const OracleOptions& opt,
                   double& x1, double& x2) {
  constexpr int kMaxIter = 100;
  for (int it = 0; it < kMaxIter; ++it) {
    const double f1 = sys.f1(x1, x2), f2 = sys.f2(x1, x2);
    const double j11 = sys.f1.d1(x1, x2), j12 = sys.f1.d2(x1, x2);
    const double j21 = sys.f2.d1(x1, x2), j22 = sys.f2.d2(x1, x2);
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) return false;
    const double s1 = (f1 * j22 - f2 * j12) / det;
    const double s2 = (j11 * f2 - j21 * f1) / det;
    x1 -= s1;
    x2 -= s2;
    if (!std::isfinite(x1) || !std::isfinite(x2)) return false;
    if (std::hypot(s1, s2) <= opt.newton_tol * (1.0 + std::hypot(x1, x2))) {
      break;
    }
  }
  const double scale = 1.0 + x1 * x1 + x2 * x2;
  return std::abs(sys.f1(x1, x2)) <= opt.accept_tol * scale &&
         std::abs(sys.f2(x1, x2)) <= opt.accept_tol * scale;
}

}  // namespace

double ResidualReport::max_residual() const {
  return std::max({res1, res2, res_gain});
}

ResidualReport coupled_residual(const ProblemSpec& spec, const ValuePair& vp,
                                const GainPair& gp) {
  check_dims(spec, vp, gp);
  const Mat B = spec.B();
  const Mat T = gp.stacked();
  const Mat& A = spec.A;

  const auto riccati = [&](const Mat& X, const Mat& Q, const Mat& R) {
    const Mat XBT = X * B * T;
    return (X * A + A.transpose() * X + T.transpose() * R * T + XBT +
            XBT.transpose() + Q)
        .norm();
  };

  ResidualReport r;
  r.res1 = riccati(vp.X1, spec.Q1, spec.R1);
  r.res2 = riccati(vp.X2, spec.Q2, spec.R2);

  Mat lhs(spec.dims.m(), spec.dims.n);
  lhs << spec.B1.transpose() * vp.X1, spec.B2.transpose() * vp.X2;
  r.res_gain = (lhs + spec.coupling() * T).norm();

  r.psd1 = linalg::is_psd(vp.X1, kSolutionPsdTol);
  r.psd2 = linalg::is_psd(vp.X2, kSolutionPsdTol);
  r.closed_loop_ok = linalg::is_hurwitz(A + B * T);
  return r;
}

VerifyResult verify_solution(const ProblemSpec& spec, const ValuePair& vp,
                             const GainPair& gp, double tol) {
  VerifyResult out;
  out.report = coupled_residual(spec, vp, gp);
  out.pass = out.report.max_residual() <= tol && out.report.psd1 &&
             out.report.psd2;
  return out;
}

ScalarSystem scalar_system(const ProblemSpec& spec) {
  const Dims& d = spec.dims;
  if (d.n != 1 || d.m1 != 1 || d.m2 != 1) {
    throw SolverError(ErrorCode::kDim, "scalar oracle needs n = m1 = m2 = 1");
  }
  Mat Minv;
  try {
    Minv = linalg::solve_linear(spec.coupling(), Mat::Identity(2, 2));
  } catch (const SolverError& e) {
    if (e.code() != ErrorCode::kSingular) throw;
    throw SolverError(ErrorCode::kCouplingSingular,
                      "coupling matrix is singular");
  }
  const double a = spec.A(0, 0);
  const double b1 = spec.B1(0, 0), b2 = spec.B2(0, 0);

  // theta_k = p_k x1 + q_k x2 from Theta = -M^{-1} [b1 x1; b2 x2].
  const double p1 = -Minv(0, 0) * b1, q1 = -Minv(0, 1) * b2;
  const double p2 = -Minv(1, 0) * b1, q2 = -Minv(1, 1) * b2;
  // b1 theta1 + b2 theta2 = u x1 + v x2
  const double u = b1 * p1 + b2 * p2, v = b1 * q1 + b2 * q2;

  const auto quadratic_form = [&](const Mat& R) {
    // theta' R theta as a quadratic in (x1, x2).
    const double r11 = R(0, 0), r12 = R(0, 1), r22 = R(1, 1);
    Quadratic f;
    f.c11 = r11 * p1 * p1 + 2 * r12 * p1 * p2 + r22 * p2 * p2;
    f.c12 = 2 * r11 * p1 * q1 + 2 * r12 * (p1 * q2 + q1 * p2) +
            2 * r22 * p2 * q2;
    f.c22 = r11 * q1 * q1 + 2 * r12 * q1 * q2 + r22 * q2 * q2;
    return f;
  };

  ScalarSystem sys;
  sys.f1 = quadratic_form(spec.R1);
  sys.f1.c0 = spec.Q1(0, 0);
  sys.f1.cx1 = 2 * a;
  sys.f1.c11 += 2 * u;
  sys.f1.c12 += 2 * v;

  sys.f2 = quadratic_form(spec.R2);
  sys.f2.c0 = spec.Q2(0, 0);
  sys.f2.cx2 = 2 * a;
  sys.f2.c12 += 2 * u;
  sys.f2.c22 += 2 * v;
  return sys;
}

GridCells scan_cells_serial(const ScalarSystem& sys, const OracleOptions& opt) {
  const int points = grid_points(opt);
  GridCells cells;
  for (int j = 0; j + 1 < points; ++j) scan_row(sys, opt, j, points, cells);
  return cells;
}

GridCells scan_cells_parallel(const ScalarSystem& sys,
                              const OracleOptions& opt) {
  const int points = grid_points(opt);
  const int rows = points - 1;
  std::vector<GridCells> per_row(static_cast<std::size_t>(std::max(rows, 0)));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < rows; ++j) {
    scan_row(sys, opt, j, points, per_row[static_cast<std::size_t>(j)]);
  }
  GridCells cells;
  for (const auto& row : per_row) cells.insert(cells.end(), row.begin(), row.end());
  return cells;
}

std::vector<std::pair<double, double>> scalar_oracle(const ProblemSpec& spec,
                                                     const OracleOptions& opt) {
  const ScalarSystem sys = scalar_system(spec);
  const GridCells cells = scan_cells_parallel(sys, opt);

  std::vector<std::pair<double, double>> roots;
  const double lo = -opt.half_width;
  for (const auto& [i, j] : cells) {
    double x1 = lo + (i + 0.5) * opt.step;
    double x2 = lo + (j + 0.5) * opt.step;
    if (!newton_polish(sys, opt, x1, x2)) continue;
    if (std::abs(x1) > opt.half_width + opt.step ||
        std::abs(x2) > opt.half_width + opt.step) {
      continue;
    }
    const bool seen = std::any_of(roots.begin(), roots.end(), [&](auto& r) {
      return std::abs(r.first - x1) <= opt.dedup_tol &&
             std::abs(r.second - x2) <= opt.dedup_tol;
    });
    if (!seen) roots.emplace_back(x1, x2);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace ncare::verify
