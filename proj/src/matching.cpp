#include "stripwin/matching.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>

#include "stripwin/errors.hpp"

namespace stripwin {

double SignedLogDet::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

MatchingSystem::MatchingSystem(Parity parity, int modes)
    : parity_(parity), overlaps_((modes < 1) ? 1 : modes) {
  if (modes < 1) fail(ErrorCode::config, "truncation order must be >= 1");
}

void MatchingSystem::check_arguments(double a, double eps) const {
  if (!(a > 0.0) || !std::isfinite(a)) {
    std::ostringstream os;
    os << "matching requires a > 0, got a = " << a;
    fail(ErrorCode::config, os.str());
  }
  if (!(eps > 0.25 && eps <= 1.0)) {
    std::ostringstream os;
    os << "matching requires 1/4 < eps <= 1, got eps = " << eps;
    fail(ErrorCode::config, os.str());
  }
}

MatchingMatrix MatchingSystem::assemble(double a, double eps) const {
  check_arguments(a, eps);
  const int n = modes();
  Eigen::VectorXd q(n), pt(n);
  for (int j = 1; j <= n; ++j) q(j - 1) = q_exponent(j, eps);
  for (int k = 1; k <= n; ++k) pt(k - 1) = p_term(k, eps, a, parity_);
  MatchingMatrix m{a, eps, parity_, n, Eigen::MatrixXd(n, n)};
  const auto& ov = overlaps_.matrix();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) m.entries(j, k) = (q(j) + pt(k)) * ov(j, k);
  return m;
}

double MatchingSystem::column_scale(double a, double eps) const {
  const auto e = window_exponent(1, eps);
  if (e.kind == LongitudinalExponent::Kind::decaying) return 1.0;
  return parity_ == Parity::even ? std::cos(e.value * a) : std::sin(e.value * a);
}

Eigen::MatrixXd MatchingSystem::regularized(double a, double eps) const {
  check_arguments(a, eps);
  const int n = modes();
  Eigen::VectorXd q(n);
  for (int j = 1; j <= n; ++j) q(j - 1) = q_exponent(j, eps);
  const auto& ov = overlaps_.matrix();
  Eigen::MatrixXd m(n, n);

  const auto first = window_exponent(1, eps);
  if (first.kind == LongitudinalExponent::Kind::oscillatory) {
    const double beta = first.value;
    const double c = std::cos(beta * a);
    const double s = std::sin(beta * a);
    for (int j = 0; j < n; ++j) {
      const double scaled = parity_ == Parity::even ? q(j) * c - beta * s : q(j) * s + beta * c;
      m(j, 0) = scaled * ov(j, 0);
    }
  } else {
    const double pt = p_term(1, eps, a, parity_);
    for (int j = 0; j < n; ++j) m(j, 0) = (q(j) + pt) * ov(j, 0);
  }
  for (int k = 2; k <= n; ++k) {
    const double pt = p_term(k, eps, a, parity_);
    for (int j = 0; j < n; ++j) m(j, k - 1) = (q(j) + pt) * ov(j, k - 1);
  }
  return m;
}

SignedLogDet MatchingSystem::regularized_det(double a, double eps) const {
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(regularized(a, eps));
  const auto& u = lu.matrixLU();
  SignedLogDet det{static_cast<int>(lu.permutationP().determinant()), 0.0};
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const double d = u(i, i);
    if (d == 0.0) return {0, -std::numeric_limits<double>::infinity()};
    if (d < 0.0) det.sign = -det.sign;
    det.log_abs += std::log(std::abs(d));
  }
  return det;
}

SingularRange MatchingSystem::singular_values(double a, double eps) const {
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(regularized(a, eps));
  const auto& s = svd.singularValues();
  return {s(s.size() - 1), s(0)};
}

KernelVector MatchingSystem::kernel(double a, double eps, double tol) const {
  const Eigen::MatrixXd m = regularized(a, eps);
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index last = s.size() - 1;

  KernelVector kv;
  kv.b_scaled = svd.matrixV().col(last);
  kv.column_scale = column_scale(a, eps);
  kv.residual = s(0) > 0.0 ? (m * kv.b_scaled).norm() / s(0) : 0.0;
  if (!(kv.residual <= tol)) {
    std::ostringstream os;
    os << "matching matrix is not singular at a = " << a << ", eps = " << eps
       << " (residual " << kv.residual << " > " << tol << ")";
    fail(ErrorCode::not_singular, os.str());
  }
  kv.b = kv.b_scaled;
  kv.b(0) *= kv.column_scale;
  const double norm = kv.b.norm();
  kv.b /= norm;
  kv.b_scaled /= norm;
  return kv;
}

MatchingMatrix assemble(double a, double eps, Parity parity, int modes) {
  return MatchingSystem(parity, modes).assemble(a, eps);
}

SignedLogDet regularized_det(double a, double eps, Parity parity, int modes) {
  return MatchingSystem(parity, modes).regularized_det(a, eps);
}

double smallest_singular(double a, double eps, Parity parity, int modes) {
  return MatchingSystem(parity, modes).singular_values(a, eps).smallest;
}

KernelVector kernel(double a, double eps, Parity parity, int modes, double tol) {
  return MatchingSystem(parity, modes).kernel(a, eps, tol);
}

}  // namespace stripwin
