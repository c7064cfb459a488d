#pragma once

#include <string>
#include <vector>

#include "ncare/matrix.h"

namespace ncare {

struct Dims {
  int n = 1;
  int m1 = 1;
  int m2 = 1;

  int m() const { return m1 + m2; }
  bool operator==(const Dims&) const = default;
};

/// Data of a two-player coupled Riccati problem. R1 and R2 are
/// (m1+m2) x (m1+m2) and are split into blocks by blocks() below.
struct ProblemSpec {
  Dims dims;
  Mat A, B1, B2, Q1, Q2, R1, R2;

  /// B = [B1 B2], n x (m1+m2).
  Mat B() const;

  /// M = [[R1_11, R1_12], [R2_21, R2_22]]; the matrix of the gain condition.
  /// Generally nonsymmetric.
  Mat coupling() const;
};

bool operator==(const ProblemSpec& a, const ProblemSpec& b);

struct CostBlocks {
  Mat R11, R12, R21, R22;
};

CostBlocks blocks(const Mat& R, const Dims& dims);

struct ValuePair {
  Mat X1, X2;
};

/// Feedback gains; Theta1 is m1 x n, Theta2 is m2 x n.
struct GainPair {
  Mat Theta1, Theta2;

  /// Theta1 stacked over Theta2, (m1+m2) x n.
  Mat stacked() const;
  static GainPair split(const Mat& stacked, const Dims& dims);
};

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kDefiniteTol = 1e-10;

enum class QPsdPolicy { kError, kWarn };

/// A ProblemSpec that passed validate(); only validate() can make one.
class ValidatedProblem {
 public:
  const ProblemSpec& spec() const { return spec_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend ValidatedProblem validate(const ProblemSpec&, QPsdPolicy);
  ValidatedProblem(ProblemSpec spec, std::vector<std::string> warnings)
      : spec_(std::move(spec)), warnings_(std::move(warnings)) {}

  ProblemSpec spec_;
  std::vector<std::string> warnings_;
};

/// Checks shapes (EDIM), symmetry of Q1, Q2, R1, R2 (ENOTSYM), positive
/// definiteness of R1_11 and R2_22 (EINDEF) and positive semidefiniteness of
/// Q1, Q2. A non-PSD Q is EINDEF under QPsdPolicy::kError and a warning under
/// kWarn. R1 and R2 themselves may be singular.
ValidatedProblem validate(const ProblemSpec& spec,
                          QPsdPolicy q_policy = QPsdPolicy::kError);

}  // namespace ncare
