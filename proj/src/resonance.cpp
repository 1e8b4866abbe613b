#include "stripwin/resonance.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <cmath>
#include <sstream>

#include "quadrature.hpp"
#include "stripwin/errors.hpp"
#include "stripwin/spectrum.hpp"
#include "stripwin/thresholds.hpp"

namespace stripwin {
namespace {

const double norm_factor = std::sqrt(2.0 / pi);

// sin(j t) for j = 1..n, by the three-term recurrence.
void sine_ladder(double t, double shift, int n, double* out) {
  // out[i] = sin((i + 1 - shift) t)
  const double c2 = 2.0 * std::cos(t);
  double prev = std::sin(-shift * t);
  double cur = std::sin((1.0 - shift) * t);
  for (int i = 0; i < n; ++i) {
    out[i] = cur;
    const double next = c2 * cur - prev;
    prev = cur;
    cur = next;
  }
}

void check_x2(double x2) {
  if (!(x2 >= -1e-12 * pi && x2 <= pi * (1.0 + 1e-12))) {
    std::ostringstream os;
    os << "x2 = " << x2 << " outside [0, pi]";
    fail(ErrorCode::domain, os.str());
  }
}

}  // namespace

ResonanceField make_field(const MatchingSystem& system, int n, double a, double eps,
                          const KernelVector& kv) {
  ResonanceField f;
  f.n = n;
  f.parity = system.parity();
  f.a_ref = a;
  f.eps = eps;
  f.modes = system.modes();
  f.b = kv.b;
  f.b1_scaled = kv.b_scaled(0);
  f.c = system.overlaps().matrix() * kv.b;
  f.c1 = f.c(0);
  f.kernel_residual = kv.residual;
  return normalized(std::move(f));
}

ResonanceField normalized(ResonanceField field) {
  if (field.c1 == 1.0) return field;
  if (!(std::abs(field.c1) > 0.0) || !std::isfinite(field.c1))
    fail(ErrorCode::precondition, "field has no chi_1 component and cannot be normalized");
  const double s = 1.0 / field.c1;
  field.b *= s;
  field.b1_scaled *= s;
  field.c *= s;
  field.c(0) = 1.0;
  field.c1 = 1.0;
  return field;
}

ResonanceField threshold_resonance(int n, int modes, std::optional<double> hint) {
  if (n < 1) fail(ErrorCode::config, "threshold resonance requires n >= 1");
  const MatchingSystem system(parity_of_index(static_cast<unsigned>(n)), modes);
  const double a = raw_threshold(system, n, {}, hint);
  return make_field(system, n, a, 1.0, system.kernel(a, 1.0));
}

ResonanceField bound_state_field(int n, double a, int modes) {
  if (n < 0) fail(ErrorCode::config, "eigenvalue index must be non-negative");
  const MatchingSystem system(parity_of_index(static_cast<unsigned>(n)), modes);
  const auto roots = sector_roots(system, a, ScanOptions{});
  const auto rank = static_cast<std::size_t>(n / 2);
  if (rank >= roots.size()) {
    std::ostringstream os;
    os << "eigenvalue " << n << " does not exist at a = " << a << " with " << modes << " modes";
    fail(ErrorCode::curve_gap, os.str());
  }
  const double eps = roots[rank].eps;
  return make_field(system, n, a, eps, system.kernel(a, eps));
}

double accuracy_radius(int modes) { return 0.02 * pi * 512.0 / modes; }

double eval_inside(const ResonanceField& f, double x1, double x2) {
  check_x2(x2);
  const int n = static_cast<int>(f.b.size());
  std::vector<double> s(n);
  sine_ladder(pi - x2, 0.5, n, s.data());
  const bool even = f.parity == Parity::even;
  const double a = f.a_ref;

  double sum = 0.0;
  const auto first = window_exponent(1, f.eps);
  if (first.kind == LongitudinalExponent::Kind::oscillatory) {
    const double w = even ? std::cos(first.value * x1) : std::sin(first.value * x1);
    sum += f.b1_scaled * w * s[0];
  } else {
    const double p = first.value;
    const double e = std::exp(p * (x1 - a));
    const double w = even ? e * (1.0 + std::exp(-2.0 * p * x1)) / (1.0 + std::exp(-2.0 * p * a))
                          : e * (-std::expm1(-2.0 * p * x1)) / (-std::expm1(-2.0 * p * a));
    sum += f.b(0) * w * s[0];
  }
  for (int k = 2; k <= n; ++k) {
    const double p = window_exponent(k, f.eps).value;
    const double e = std::exp(p * (x1 - a));
    if (e == 0.0) break;  // exponents increase with k
    const double w = even ? e * (1.0 + std::exp(-2.0 * p * x1)) / (1.0 + std::exp(-2.0 * p * a))
                          : e * (-std::expm1(-2.0 * p * x1)) / (-std::expm1(-2.0 * p * a));
    sum += f.b(k - 1) * w * s[k - 1];
  }
  return norm_factor * sum;
}

double eval_outside(const ResonanceField& f, double x1, double x2) {
  check_x2(x2);
  const int n = static_cast<int>(f.c.size());
  std::vector<double> s(n);
  sine_ladder(pi - x2, 0.0, n, s.data());
  double sum = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double e = std::exp(-q_exponent(j, f.eps) * (x1 - f.a_ref));
    if (e == 0.0) break;
    sum += f.c(j - 1) * e * s[j - 1];
  }
  return norm_factor * sum;
}

FieldValue eval_field(const ResonanceField& f, double x1, double x2, bool prefer_inside) {
  if (!std::isfinite(x1)) fail(ErrorCode::domain, "x1 must be finite");
  if (x1 < 0.0) {
    FieldValue v = eval_field(f, -x1, x2, prefer_inside);
    if (f.parity == Parity::odd) v.value = -v.value;
    return v;
  }
  FieldValue v;
  const bool inside = x1 < f.a_ref || (x1 == f.a_ref && prefer_inside);
  v.value = inside ? eval_inside(f, x1, x2) : eval_outside(f, x1, x2);
  v.accuracy_warning = std::hypot(x1 - f.a_ref, x2) < accuracy_radius(f.modes);
  return v;
}

std::vector<double> corner_radii(double lo, double hi, int count) {
  if (count < 2 || !(hi > lo)) fail(ErrorCode::config, "corner radii need count >= 2 and hi > lo");
  std::vector<double> r(count);
  for (int i = 0; i < count; ++i) r[i] = pi * (lo + (hi - lo) * i / (count - 1));
  return r;
}

EdgeFit edge_coefficient(const ResonanceField& f, const std::vector<double>& radii,
                         EdgeMethod method, double max_residual) {
  if (radii.size() < 8) fail(ErrorCode::config, "corner fit needs at least 8 radii");
  for (double r : radii) {
    if (!(r >= 0.02 * pi * (1.0 - 1e-9) && r <= 0.25 * pi * (1.0 + 1e-9))) {
      std::ostringstream os;
      os << "corner radius " << r << " outside [0.02, 0.25] d";
      fail(ErrorCode::config, os.str());
    }
  }
  if (!(f.eps > 0.25)) fail(ErrorCode::precondition, "corner fit needs an oscillatory field");

  EdgeFit fit;
  fit.method = method;
  fit.radii = radii;
  const double kappa = std::sqrt(f.eps);
  const double a = f.a_ref;
  const std::size_t m = radii.size();
  for (double r : radii)
    if (r < accuracy_radius(f.modes)) fit.accuracy_warning = true;

  int params = 1;
  Eigen::MatrixXd basis;
  Eigen::VectorXd y(m);
  if (method == EdgeMethod::arc) {
    static const detail::GaussRule rule = detail::gauss_legendre(48);
    basis.resize(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
      const double r = radii[i];
      double acc = 0.0;
      for (int panel = 0; panel < 2; ++panel) {
        const double t0 = panel * pi / 2.0;
        for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
          const double th = t0 + pi / 4.0 * (rule.nodes[g] + 1.0);
          const double x1 = a + r * std::cos(th);
          const double x2 = r * std::sin(th);
          const double psi = panel == 0 ? eval_outside(f, x1, x2) : eval_inside(f, x1, x2);
          acc += rule.weights[g] * pi / 4.0 * psi * std::sin(th / 2.0);
        }
      }
      y(i) = 2.0 / pi * acc;
      basis(i, 0) = std::sin(kappa * r) / (kappa * std::sqrt(r));
    }
  } else {
    params = 3;
    basis.resize(m, 3);
    const double s = std::sqrt(0.5);
    for (std::size_t i = 0; i < m; ++i) {
      const double r = radii[i];
      y(i) = eval_outside(f, a, r);
      basis(i, 0) = s * std::sqrt(r) * std::sph_bessel(0, kappa * r);
      basis(i, 1) = s * std::sqrt(r) * std::sph_bessel(1, kappa * r);
      basis(i, 2) = -s * std::sqrt(r) * std::sph_bessel(2, kappa * r);
    }
  }
  fit.samples.assign(y.data(), y.data() + m);

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
  const Eigen::VectorXd coef = qr.solve(y);
  const Eigen::VectorXd resid = y - basis * coef;
  fit.alpha = coef(0);
  const Eigen::VectorXd leading = basis.col(0) * coef(0);
  fit.relative_residual = leading.norm() > 0.0 ? resid.norm() / leading.norm() : INFINITY;

  const Eigen::MatrixXd gram_inv = (basis.transpose() * basis).inverse();
  const double dof = static_cast<double>(m) - params;
  fit.stderr_alpha = std::sqrt(resid.squaredNorm() / dof * gram_inv(0, 0));

  if (!(fit.relative_residual <= max_residual)) {
    std::ostringstream os;
    os << "corner fit residual " << fit.relative_residual << " exceeds " << max_residual
       << " of the leading term";
    fail(ErrorCode::fit_quality, os.str());
  }
  return fit;
}

}  // namespace stripwin
