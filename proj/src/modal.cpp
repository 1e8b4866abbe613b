#include "stripwin/modal.hpp"

#include <cmath>
#include <sstream>

#include "stripwin/errors.hpp"

namespace stripwin {
namespace {

void check_mode(int j, const char* name) {
  if (j < 1) {
    std::ostringstream os;
    os << name << " mode index must be >= 1, got " << j;
    fail(ErrorCode::domain, os.str());
  }
}

void check_transverse(double x2, double d) {
  const double slack = 1e-12 * d;
  if (!(x2 >= -slack && x2 <= d + slack)) {
    std::ostringstream os;
    os << "x2 = " << x2 << " outside [0, " << d << "]";
    fail(ErrorCode::domain, os.str());
  }
}

}  // namespace

double chi(int j, double x2, double d) {
  check_mode(j, "chi");
  check_transverse(x2, d);
  return std::sqrt(2.0 / d) * std::sin(pi * j * (d - x2) / d);
}

double phi(int k, double x2, double d) {
  check_mode(k, "phi");
  check_transverse(x2, d);
  return std::sqrt(2.0 / d) * std::sin(pi * (k - 0.5) * (d - x2) / d);
}

double phi_derivative(int k, double x2, double d) {
  check_mode(k, "phi");
  check_transverse(x2, d);
  const double w = pi * (k - 0.5) / d;
  return -std::sqrt(2.0 / d) * w * std::cos(w * (d - x2));
}

double overlap(int j, int k) {
  check_mode(j, "chi");
  check_mode(k, "phi");
  const double nu = k - 0.5;
  const double sign = ((j - k) % 2 == 0) ? 1.0 : -1.0;
  return sign / pi * 2.0 * j / (static_cast<double>(j) * j - nu * nu);
}

OverlapTable::OverlapTable(int rows, int cols) : table_(rows, cols) {
  if (rows < 1 || cols < 1) fail(ErrorCode::config, "overlap table needs at least one mode");
  for (int k = 1; k <= cols; ++k)
    for (int j = 1; j <= rows; ++j) table_(j - 1, k - 1) = overlap(j, k);
}

double q_exponent(int j, double eps) {
  check_mode(j, "chi");
  const double j2 = static_cast<double>(j) * j;
  if (eps > j2) {
    std::ostringstream os;
    os << "q_" << j << " is imaginary for eps = " << eps;
    fail(ErrorCode::domain, os.str());
  }
  if (eps == j2) return 0.0;
  return std::sqrt(j2 - eps);
}

LongitudinalExponent window_exponent(int k, double eps) {
  check_mode(k, "phi");
  const double nu = k - 0.5;
  const double s = nu * nu - eps;
  if (s >= 0.0) return {LongitudinalExponent::Kind::decaying, std::sqrt(s)};
  return {LongitudinalExponent::Kind::oscillatory, std::sqrt(-s)};
}

double p_term(int k, double eps, double a, Parity parity) {
  if (!(a > 0.0)) fail(ErrorCode::config, "p_term requires a > 0");
  const auto e = window_exponent(k, eps);
  if (e.kind == LongitudinalExponent::Kind::decaying) {
    const double p = e.value;
    if (parity == Parity::even) return p * std::tanh(p * a);
    if (p == 0.0) return 1.0 / a;  // limit of p coth(p a)
    return p / std::tanh(p * a);
  }
  const double beta = e.value;
  const double c = std::cos(beta * a);
  const double s = std::sin(beta * a);
  if (parity == Parity::even) {
    if (std::abs(c) < pole_guard) {
      std::ostringstream os;
      os << "tan pole at beta*a = " << beta * a << " (k = " << k << ")";
      fail(ErrorCode::pole, os.str());
    }
    return -beta * s / c;
  }
  if (std::abs(s) < pole_guard) {
    std::ostringstream os;
    os << "cot pole at beta*a = " << beta * a << " (k = " << k << ")";
    fail(ErrorCode::pole, os.str());
  }
  return beta * c / s;
}

}  // namespace stripwin
