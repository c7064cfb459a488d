#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncare {

/// Failure categories shared by every module. The string form ("EDIM", ...)
/// is what the CLI prints on the error stream.
enum class ErrorCode {
  kDim,
  kNotSym,
  kIndef,
  kParse,
  kRange,
  kSingular,
  kNoConv,
  kImagAxis,
  kDefect,
  kNoStab,
  kCouplingSingular,
  kIo,
};

std::string_view to_string(ErrorCode code);

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& what);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ncare
