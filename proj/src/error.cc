#include "ncare/error.h"

namespace ncare {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDim: return "EDIM";
    case ErrorCode::kNotSym: return "ENOTSYM";
    case ErrorCode::kIndef: return "EINDEF";
    case ErrorCode::kParse: return "EPARSE";
    case ErrorCode::kRange: return "ERANGE";
    case ErrorCode::kSingular: return "ESINGULAR";
    case ErrorCode::kNoConv: return "ENOCONV";
    case ErrorCode::kImagAxis: return "EIMAGAXIS";
    case ErrorCode::kDefect: return "EDEFECT";
    case ErrorCode::kNoStab: return "ENOSTAB";
    case ErrorCode::kCouplingSingular: return "ECOUPLINGSINGULAR";
    case ErrorCode::kIo: return "EIO";
  }
  return "EUNKNOWN";
}

SolverError::SolverError(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code) {}

}  // namespace ncare
