#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncare/coupled.h"

namespace ncare::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitNotConverged = 1,  // also: verification failed, example mismatch
  kExitInputError = 2,
  kExitNumericError = 3,
};

inline constexpr std::string_view kTraceHeader =
    "iter,dx1_sq,dx2_sq,step_sq,res1,res2,res_gain";

/// Tolerance the `example` subcommand uses unless --epsilon is given.
inline constexpr double kExampleEpsilon = 1e-24;

/// Shortest decimal text that reads back to the same double.
std::string shortest_number(double x);

std::string format_trace_csv(const std::vector<coupled::TraceEntry>& entries);

/// Writes format_trace_csv(entries) to path. Throws EIO.
void write_trace(const std::vector<coupled::TraceEntry>& entries,
                 const std::string& path);

/// Entry point; args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err);

}  // namespace ncare::cli
