#include "ncare/examples.h"

#include <string>

#include "ncare/error.h"

namespace ncare {
namespace {

Mat mat(Eigen::Index rows, Eigen::Index cols,
        std::initializer_list<double> row_major) {
  Mat M(rows, cols);
  auto it = row_major.begin();
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = *it++;
  return M;
}

Mat eye(Eigen::Index n) { return Mat::Identity(n, n); }

// R1 and R2 shared by the m1 = m2 = 2 examples.
Mat r1_2x2() {
  return mat(4, 4, {1, 0.5, 0, 0,  //
                    0.5, 1, 0, 0,  //
                    0, 0, 1, 0.5,  //
                    0, 0, 0.5, 1});
}
Mat r2_2x2() {
  return mat(4, 4, {2, 0, 0, 0,  //
                    0, 2, 1, 0,  //
                    0, 1, 2, 1,  //
                    0, 0, 1, 2});
}

BuiltinExample example1() {
  BuiltinExample ex{1, "n=1, m1=1, m2=1 (scalar)", {}, {}, 1e-7};
  ProblemSpec& p = ex.spec;
  p.dims = {1, 1, 1};
  p.A = mat(1, 1, {1});
  p.B1 = mat(1, 1, {1});
  p.B2 = mat(1, 1, {1});
  p.Q1 = mat(1, 1, {2});
  p.Q2 = mat(1, 1, {2.5});
  p.R1 = mat(2, 2, {1, 0, 0, 0});
  p.R2 = mat(2, 2, {0, 0, 0, 2});
  ex.expected = {mat(1, 1, {2}), mat(1, 1, {1})};
  return ex;
}

BuiltinExample example2() {
  BuiltinExample ex{2, "n=2, m1=1, m2=1", {}, {}, 1e-7};
  ProblemSpec& p = ex.spec;
  p.dims = {2, 1, 1};
  p.A = -eye(2);
  p.B1 = mat(2, 1, {1, 0});
  p.B2 = mat(2, 1, {0, 1});
  p.Q1 = mat(2, 2, {3, 0, 0, 2.75});
  p.Q2 = mat(2, 2, {2, 0, 0, 2.5});
  p.R1 = eye(2);
  p.R2 = 2 * eye(2);
  ex.expected = {eye(2), eye(2)};
  return ex;
}

BuiltinExample example3() {
  BuiltinExample ex{3, "n=2, m1=2, m2=1", {}, {}, 1e-7};
  ProblemSpec& p = ex.spec;
  p.dims = {2, 2, 1};
  p.A = -eye(2);
  p.B1 = eye(2);
  p.B2 = mat(2, 1, {1, 1});
  p.Q1 = mat(2, 2, {4.25, 2.25, 2.25, 3});
  p.Q2 = mat(2, 2, {2.5, 0, 0, 2});
  p.R1 = mat(3, 3, {1, 0.5, 0, 0.5, 1, 0, 0, 0, 1});
  p.R2 = mat(3, 3, {2, 0, 0, 0, 2, 1, 0, 1, 2});
  ex.expected = {mat(2, 2, {1, 0.5, 0.5, 1}), eye(2)};
  return ex;
}

BuiltinExample example4() {
  BuiltinExample ex{4, "n=2, m1=2, m2=2", {}, {}, 1e-7};
  ProblemSpec& p = ex.spec;
  p.dims = {2, 2, 2};
  p.A = -eye(2);
  p.B1 = eye(2);
  p.B2 = mat(2, 2, {1, 0.5, 0.5, 1});
  // 4 1/2, 2 3/4, 3 1/6; the last is the double nearest 19/6.
  p.Q1 = mat(2, 2, {4.5, 2.75, 2.75, 19.0 / 6.0});
  p.Q2 = mat(2, 2, {8, -0.5, -0.5, 19.0 / 6.0});
  p.R1 = r1_2x2();
  p.R2 = r2_2x2();
  ex.expected = {mat(2, 2, {1, 0.5, 0.5, 1}), mat(2, 2, {2, 0, 0, 1})};
  return ex;
}

BuiltinExample example5() {
  BuiltinExample ex{5, "n=3, m1=2, m2=2 (Q printed to 4 decimals)", {}, {},
                    1e-2};
  ProblemSpec& p = ex.spec;
  p.dims = {3, 2, 2};
  p.A = mat(3, 3, {-5, 0, -1, 0, -10, 0, -1, 0, -5});
  p.B1 = mat(3, 2, {1, 0, 0, 1, 0, 1});
  p.B2 = mat(3, 2, {1, 0.5, 0.5, 1, 0, 1});
  p.Q1 = mat(3, 3, {13.1852, 19.1111, 3.8704,  //
                    19.1111, 43.4167, 3.9722,  //
                    3.8704, 3.9722, 11.8241});
  p.Q2 = mat(3, 3, {21.8519, -0.7222, 3.9815,  //
                    -0.7222, 26.1667, 25.2222,  //
                    3.9815, 25.2222, 31.6852});
  p.R1 = r1_2x2();
  p.R2 = r2_2x2();
  ex.expected = {mat(3, 3, {1, 1, 0, 1, 2, 0, 0, 0, 1}),
                 mat(3, 3, {2, 0, 0, 0, 1, 1, 0, 1, 2})};
  return ex;
}

}  // namespace

BuiltinExample builtin_example(int id) {
  switch (id) {
    case 1: return example1();
    case 2: return example2();
    case 3: return example3();
    case 4: return example4();
    case 5: return example5();
  }
  throw SolverError(ErrorCode::kRange,
                    "example id " + std::to_string(id) + " outside 1..5");
}

}  // namespace ncare
