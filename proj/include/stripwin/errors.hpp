#pragma once

#include <stdexcept>
#include <string>

namespace stripwin {

// Numeric values are shared with the C API status codes in stripwin.h.
enum class ErrorCode {
  config = 1,        // invalid geometry or option values
  domain = 2,        // argument outside the domain of a basis function
  pole = 3,          // raw matching matrix requested too close to a tan/cot pole
  not_singular = 4,  // kernel requested where the matching matrix is regular
  resolution = 5,    // ambiguous sign change that refinement could not settle
  consistency = 6,   // merged spectrum violates parity alternation
  bracket_anomaly = 7,
  convergence = 8,
  curve_gap = 9,     // eigenvalue branch missing at a requested half-width
  fit_quality = 10,
  iteration = 11,    // eigen-iteration of the finite-difference oracle failed
  precondition = 12,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace stripwin
