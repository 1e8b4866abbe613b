#pragma once

#include <Eigen/Core>

#include "stripwin/geometry.hpp"

namespace stripwin {

// Transverse bases on 0 <= x2 <= d, both measured from the upper wall x2 = d.
//
//   chi_j(x2) = sqrt(2/d) sin(pi j (d - x2) / d)          Dirichlet at both walls
//   phi_k(x2) = sqrt(2/d) sin(pi (k - 1/2) (d - x2) / d)  Dirichlet at d, Neumann at 0
//
// chi_j differs from sin(pi j x2 / d) by the sign (-1)^(j+1); with this choice
// the overlap (chi_j, phi_k) has the closed form implemented by overlap().

double chi(int j, double x2, double d = pi);
double phi(int k, double x2, double d = pi);
/// d(phi_k)/d(x2).
double phi_derivative(int k, double x2, double d = pi);

/// (chi_j, phi_k) = (-1)^(j-k) / pi * 2j / (j^2 - (k - 1/2)^2), j, k >= 1.
double overlap(int j, int k);

/// Dense table of overlaps for 1 <= j <= rows, 1 <= k <= cols.
class OverlapTable {
 public:
  explicit OverlapTable(int modes) : OverlapTable(modes, modes) {}
  OverlapTable(int rows, int cols);

  int rows() const noexcept { return static_cast<int>(table_.rows()); }
  int cols() const noexcept { return static_cast<int>(table_.cols()); }
  /// 1-based access.
  double operator()(int j, int k) const { return table_(j - 1, k - 1); }
  const Eigen::MatrixXd& matrix() const noexcept { return table_; }

 private:
  Eigen::MatrixXd table_;
};

struct LongitudinalExponent {
  enum class Kind { decaying, oscillatory };
  Kind kind = Kind::decaying;
  double value = 0.0;  // rate for decaying, frequency beta for oscillatory
};

/// q_j = sqrt(j^2 - eps) in units d = pi. Exact zero at j = 1, eps = 1.
double q_exponent(int j, double eps);

/// p_k = sqrt((k - 1/2)^2 - eps), or beta_k = sqrt(eps - (k - 1/2)^2) when
/// the window mode oscillates.
LongitudinalExponent window_exponent(int k, double eps);

/// Below this |cos(beta a)| (even) or |sin(beta a)| (odd) the raw p_term is
/// treated as a pole.
inline constexpr double pole_guard = 1e-12;

/// Logarithmic derivative of the window mode at x1 = a:
///   even: p tanh(p a), odd: p coth(p a),
/// reduced to -beta tan(beta a) / beta cot(beta a) on the oscillatory branch.
/// Throws ErrorCode::pole inside the guard band of a tan/cot pole.
double p_term(int k, double eps, double a, Parity parity);

}  // namespace stripwin
