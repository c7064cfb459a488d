#pragma once

#include <string>
#include <string_view>

#include "ncare/problem.h"

// JSON problem and solution files. Layout is documented in
// docs/file_formats.md. Numbers are written with "%.17g", which reproduces
// every finite double exactly on re-read.

namespace ncare {

/// Throws EPARSE on malformed JSON, missing fields, ragged rows or matrices
/// whose shape disagrees with n, m1, m2. A 1x1 matrix may be written as a bare
/// number.
ProblemSpec parse_problem(std::string_view text);
std::string serialize_problem(const ProblemSpec& spec);

struct SolutionFile {
  ValuePair values;
  GainPair gains;
  int iterations = 0;
  double res1 = 0.0;
  double res2 = 0.0;
  double res_gain = 0.0;
};

/// X1, X2 must be square and share n with the gain widths (EPARSE otherwise).
SolutionFile parse_solution(std::string_view text);
std::string serialize_solution(const SolutionFile& sol);

/// "%.17g"; non-finite values become "null".
std::string format_number(double x);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace ncare
