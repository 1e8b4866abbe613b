#include "stripwin/errors.hpp"

namespace stripwin {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::config: return "configuration error";
    case ErrorCode::domain: return "domain error";
    case ErrorCode::pole: return "pole-proximity error";
    case ErrorCode::not_singular: return "not-singular error";
    case ErrorCode::resolution: return "resolution error";
    case ErrorCode::consistency: return "internal-consistency error";
    case ErrorCode::bracket_anomaly: return "bracket-anomaly error";
    case ErrorCode::convergence: return "convergence error";
    case ErrorCode::curve_gap: return "curve-gap error";
    case ErrorCode::fit_quality: return "fit-quality error";
    case ErrorCode::iteration: return "iteration error";
    case ErrorCode::precondition: return "precondition error";
  }
  return "unknown error";
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace stripwin
