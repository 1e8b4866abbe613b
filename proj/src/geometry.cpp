#include "stripwin/geometry.hpp"

#include <cmath>
#include <string>

#include "stripwin/errors.hpp"

namespace stripwin {

std::string_view to_string(Parity p) noexcept {
  return p == Parity::even ? "even" : "odd";
}

Parity parse_parity(std::string_view s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  fail(ErrorCode::config, "parity must be 'even' or 'odd', got '" + std::string(s) + "'");
}

Normalized normalize(const StripGeometry& geom) {
  if (!(geom.d > 0.0) || !std::isfinite(geom.d))
    fail(ErrorCode::config, "strip width d must be positive");
  if (!(geom.a >= 0.0) || !std::isfinite(geom.a))
    fail(ErrorCode::config, "window half-width a must be non-negative");
  const double ratio = pi / geom.d;
  return {geom.a * ratio, ratio * ratio};
}

StripGeometry denormalize(double a_norm, double d) {
  if (!(d > 0.0)) fail(ErrorCode::config, "strip width d must be positive");
  return {d, a_norm * d / pi};
}

SpectralPoint spectral_point_from_decay(int index, double a, Parity parity, double m) {
  SpectralPoint p;
  p.index = index;
  p.a = a;
  p.parity = parity;
  p.m = m;
  p.lambda = 1.0 - m * m;
  p.eps = p.lambda;
  return p;
}

}  // namespace stripwin
