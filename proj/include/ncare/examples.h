#pragma once

#include <string_view>

#include "ncare/problem.h"

namespace ncare {

inline constexpr int kBuiltinExampleCount = 5;

struct BuiltinExample {
  int id = 0;
  std::string_view title;
  ProblemSpec spec;
  /// Published solution pair.
  ValuePair expected;
  /// Frobenius distance within which a converged run counts as reproducing
  /// `expected`. Looser for example 5, whose Q entries are 4-decimal roundings.
  double match_tol = 1e-7;
};

/// The five reference problems (ids 1..5). Throws ERANGE otherwise.
BuiltinExample builtin_example(int id);

}  // namespace ncare
