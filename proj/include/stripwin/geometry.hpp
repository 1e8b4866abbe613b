#pragma once

#include <numbers>
#include <string_view>

namespace stripwin {

inline constexpr double pi = std::numbers::pi;

/// Symmetry class under x1 -> -x1.
enum class Parity { even, odd };

constexpr Parity parity_of_index(unsigned n) noexcept {
  return (n % 2 == 0) ? Parity::even : Parity::odd;
}

std::string_view to_string(Parity p) noexcept;
/// Accepts "even"/"odd"; throws ErrorCode::config otherwise.
Parity parse_parity(std::string_view s);

/// Strip {0 < x2 < d} with a Neumann window |x1| < a on the lower wall.
struct StripGeometry {
  double d = pi;
  double a = 0.0;
};

/// Half-width in units where d = pi, and the factor (pi/d)^2 that maps
/// normalized eigenvalues back to physical ones.
struct Normalized {
  double a = 0.0;
  double scale = 1.0;
};

Normalized normalize(const StripGeometry& geom);
StripGeometry denormalize(double a_norm, double d);

/// One discrete eigenvalue in normalized units (d = pi, threshold 1).
///
/// `eps` is the eigenvalue in units of the threshold, `m` the decay rate of
/// the eigenfunction along the strip; m^2 + lambda = 1.
struct SpectralPoint {
  int index = 0;
  double a = 0.0;
  Parity parity = Parity::even;
  double eps = 0.0;
  double lambda = 0.0;
  double m = 0.0;
};

/// Builds a point from its decay rate, which is the quantity the solvers
/// extrapolate.
SpectralPoint spectral_point_from_decay(int index, double a, Parity parity, double m);

}  // namespace stripwin
