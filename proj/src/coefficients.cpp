#include "stripwin/coefficients.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "stripwin/errors.hpp"
#include "stripwin/spectrum.hpp"
#include "stripwin/thresholds.hpp"
#include "stripwin/workers.hpp"

namespace stripwin {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Check make_check(std::string name, double value, double limit, bool passed, std::string detail) {
  return {std::move(name), passed, value, limit, std::move(detail)};
}

// Ordinary least squares; returns coefficients and fills residuals.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                              Eigen::VectorXd& resid) {
  const Eigen::VectorXd c = x.colPivHouseholderQr().solve(y);
  resid = y - x * c;
  return c;
}

void check_eps_grid(const std::vector<double>& grid) {
  if (grid.empty()) fail(ErrorCode::config, "empty eps grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] <= 0.25))
      fail(ErrorCode::config, "eps grid must lie in (0, 0.25]");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      fail(ErrorCode::config, "eps grid must be ascending");
  }
}

std::vector<SpectralPoint> points_above_threshold(int n, double a_n,
                                                  const std::vector<double>& eps_grid,
                                                  const Truncation& t) {
  return parallel_map<SpectralPoint>(eps_grid.size(), [&](std::size_t i) {
    try {
      return eigenvalue(n, a_n + eps_grid[i], t);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "at eps = " << eps_grid[i] << ": " << e.what();
      fail(e.code(), os.str());
    }
  });
}

}  // namespace

double mu_from_integral(const ResonanceField& f) {
  if (!f.is_threshold()) fail(ErrorCode::precondition, "mu integral needs a threshold field");
  if (f.c1 != 1.0) fail(ErrorCode::precondition, "mu integral needs a normalized field");
  const double a = f.a_ref;
  const bool even = f.parity == Parity::even;

  double outside = 0.0;
  for (int j = 2; j <= static_cast<int>(f.c.size()); ++j) {
    const double c = f.c(j - 1);
    outside += c * c * q_exponent(j, 1.0) / 2.0;
  }

  const double beta = window_exponent(1, 1.0).value;
  const double b1 = f.b1_scaled;
  const double s2 = std::sin(2.0 * beta * a) / (4.0 * beta);
  double inside = b1 * b1 * beta * beta * (even ? a / 2.0 - s2 : a / 2.0 + s2);
  for (int k = 2; k <= static_cast<int>(f.b.size()); ++k) {
    const double p = window_exponent(k, 1.0).value;
    const double bk = f.b(k - 1);
    const double pa = p * a;
    // p^2 (sinh(2pa)/(4p) -+ a/2) / cosh^2 or sinh^2, in overflow-free form
    const double term = even ? p * std::tanh(pa) - p * pa / std::pow(std::cosh(pa), 2)
                             : p / std::tanh(pa) + p * pa / std::pow(std::sinh(pa), 2);
    inside += bk * bk * term / 2.0;
  }
  return 2.0 / a * (outside + inside);
}

double mu_from_alpha(double alpha) { return pi * alpha * alpha / 4.0; }

MuReport mu_report(int n, const MuOptions& opts) {
  if (n < 1) fail(ErrorCode::config, "mu requires n >= 1 (a_0 = 0 has no interior threshold)");
  MuReport rep;
  rep.n = n;
  rep.ladder = truncation_ladder(opts.truncation);

  std::vector<double> a_levels;
  std::optional<double> hint;
  for (int modes : rep.ladder) {
    const auto field = threshold_resonance(n, modes, hint);
    hint = field.a_ref;
    a_levels.push_back(field.a_ref);
    rep.mu_levels.push_back(mu_from_integral(field));
  }
  rep.a_n = extrapolate_in_modes(rep.ladder, a_levels);
  rep.mu_integral = extrapolate_in_modes(rep.ladder, rep.mu_levels);

  const auto field = threshold_resonance(n, opts.field_modes, hint);
  const auto fit = edge_coefficient(field, opts.radii, opts.method);
  rep.alpha = fit.alpha;
  rep.alpha_stderr = fit.stderr_alpha;
  rep.accuracy_warning = fit.accuracy_warning;
  rep.mu_alpha = mu_from_alpha(fit.alpha);
  rep.rel_diff = std::abs(rep.mu_integral - rep.mu_alpha) / rep.mu_integral;
  rep.modes = std::max(opts.truncation.modes, opts.field_modes);
  return rep;
}

bool FitReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

double FitReport::coefficient(const std::string& name) const {
  for (const auto& [k, v] : coefficients)
    if (k == name) return v;
  fail(ErrorCode::config, "no coefficient named " + name);
}

std::vector<double> default_eps_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 10; ++i) g.push_back(0.02 * i);
  return g;
}

FitReport verify_quadratic_law(int n, double a_n, double mu_ref, const std::vector<double>& eps_grid,
                               const LawOptions& opts) {
  check_eps_grid(eps_grid);
  if (eps_grid.size() < 2) fail(ErrorCode::fit_quality, "quadratic law needs at least two eps");
  const auto points = points_above_threshold(n, a_n, eps_grid, opts.truncation);
  const auto k = static_cast<Eigen::Index>(eps_grid.size());

  Eigen::VectorXd gap(k), log_gap(k);
  Eigen::MatrixXd loglog(k, 2), cubic(k, 2);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double e = eps_grid[i];
    gap(i) = 1.0 - points[i].lambda;
    log_gap(i) = std::log(gap(i));
    loglog(i, 0) = 1.0;
    loglog(i, 1) = std::log(e);
    cubic(i, 0) = e * e;
    cubic(i, 1) = e * e * e;
  }
  Eigen::VectorXd r1, r2;
  const Eigen::VectorXd line = least_squares(loglog, log_gap, r1);
  const Eigen::VectorXd cc = least_squares(cubic, gap, r2);
  const double slope = line(1);
  const double mu_fit = std::sqrt(std::max(cc(0), 0.0));
  const double c3 = cc(1);

  FitReport rep;
  rep.model = "gap = mu^2 eps^2 + C eps^3";
  double c_bound = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double e = eps_grid[i];
    rep.sample.push_back({e, gap(i), cc(0) * e * e + c3 * e * e * e});
    c_bound = std::max(c_bound, std::abs(gap(i) - cc(0) * e * e) / (e * e * e));
  }
  rep.residual_norm = r2.norm();
  rep.coefficients = {{"mu", mu_fit},       {"C", c3},
                      {"loglog_slope", slope}, {"loglog_intercept", line(0)},
                      {"remainder_bound", c_bound}, {"mu_reference", mu_ref}};

  bool monotone = gap(0) > 0.0;
  for (Eigen::Index i = 1; i < k; ++i) monotone = monotone && gap(i) > gap(i - 1);
  rep.checks.push_back(make_check("gap_positive_increasing", monotone ? 1.0 : 0.0, 1.0, monotone,
                                  "gap(eps) > 0 and strictly increasing"));
  rep.checks.push_back(make_check("loglog_slope", slope, opts.slope_tol,
                                  std::abs(slope - 2.0) <= opts.slope_tol,
                                  "|slope - 2| = " + fmt(std::abs(slope - 2.0))));
  const double rel = std::abs(mu_fit - mu_ref) / mu_ref;
  rep.checks.push_back(make_check("mu_fit_vs_reference", rel, opts.mu_rel_tol,
                                  rel <= opts.mu_rel_tol, "fitted mu " + fmt(mu_fit) +
                                                              " vs " + fmt(mu_ref)));
  // The remainder is O(eps^3) when one constant bounds it on the whole grid
  // and that constant is of the size of the fitted cubic coefficient.
  const bool remainder_ok = std::isfinite(c_bound) && c_bound <= 2.0 * std::abs(c3);
  rep.checks.push_back(make_check("remainder_cubic", c_bound, 2.0 * std::abs(c3), remainder_ok,
                                  "max |gap - mu^2 eps^2| / eps^3 vs 2|C|"));
  return rep;
}

FitReport verify_decay_law(int n, double a_n, double mu_ref, const std::vector<double>& eps_grid,
                           const LawOptions& opts) {
  check_eps_grid(eps_grid);
  if (eps_grid.size() < 2)
    fail(ErrorCode::fit_quality, "affine decay-law fit is underdetermined with one eps");
  const auto points = points_above_threshold(n, a_n, eps_grid, opts.truncation);
  const auto k = static_cast<Eigen::Index>(eps_grid.size());
  Eigen::MatrixXd x(k, 2);
  Eigen::VectorXd y(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    x(i, 0) = 1.0;
    x(i, 1) = eps_grid[i];
    y(i) = points[i].m / eps_grid[i];
  }
  Eigen::VectorXd resid;
  const Eigen::VectorXd c = least_squares(x, y, resid);

  FitReport rep;
  rep.model = "m / eps = mu + kappa eps";
  for (Eigen::Index i = 0; i < k; ++i)
    rep.sample.push_back({eps_grid[i], y(i), c(0) + c(1) * eps_grid[i]});
  rep.residual_norm = resid.norm();
  rep.coefficients = {{"mu", c(0)}, {"kappa", c(1)}, {"mu_reference", mu_ref}};

  const double rel = std::abs(c(0) - mu_ref) / mu_ref;
  rep.checks.push_back(make_check("mu_intercept_vs_reference", rel, opts.mu_rel_tol,
                                  rel <= opts.mu_rel_tol,
                                  "intercept " + fmt(c(0)) + " vs " + fmt(mu_ref)));
  const double limit = opts.remainder_tol * std::abs(c(1)) * eps_grid.back();
  const double worst = resid.cwiseAbs().maxCoeff();
  rep.checks.push_back(make_check("affine_residual", worst, limit, worst <= limit,
                                  "max residual vs 10% of |kappa| eps_max"));
  return rep;
}

FitReport verify_popov(const std::vector<double>& a_grid, const PopovOptions& opts) {
  if (a_grid.empty()) fail(ErrorCode::config, "empty half-width grid");
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    if (!(a_grid[i] > 0.0 && a_grid[i] <= 0.5))
      fail(ErrorCode::config, "Popov grid must lie in (0, 0.5]");
    if (i > 0 && !(a_grid[i] < a_grid[i - 1]))
      fail(ErrorCode::config, "Popov grid must be descending");
  }
  const auto points = parallel_map<SpectralPoint>(
      a_grid.size(), [&](std::size_t i) { return eigenvalue(0, a_grid[i], opts.truncation); });

  FitReport rep;
  rep.model = "r(a) = 4 (1 - lambda_0) / a^4 -> 1";
  std::vector<double> as, dev;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    const double a = a_grid[i];
    const double gap = 1.0 - points[i].lambda;
    if (gap < opts.min_gap) {
      rep.notes.push_back("a = " + fmt(a) + " skipped: gap " + fmt(gap) +
                          " below solver resolution");
      continue;
    }
    const double r = 4.0 * gap / std::pow(a, 4);
    rep.sample.push_back({a, r, 1.0});
    rep.coefficients.push_back({"r(" + fmt(a) + ")", r});
    as.push_back(a);
    dev.push_back(std::abs(r - 1.0));
    num += (r - 1.0) * a;
    den += a * a;
  }
  if (rep.sample.empty()) fail(ErrorCode::fit_quality, "every Popov grid point was skipped");
  const double kappa = num / den;
  rep.coefficients.push_back({"kappa", kappa});
  double rss = 0.0;
  for (auto& s : rep.sample) {
    s.predicted = 1.0 + kappa * s.input;
    rss += std::pow(s.observed - s.predicted, 2);
  }
  rep.residual_norm = std::sqrt(rss);

  bool decreasing = true;
  std::string trend;
  for (std::size_t i = 0; i < dev.size(); ++i) {
    if (i > 0) {
      trend += ", ";
      decreasing = decreasing && dev[i] < dev[i - 1];
    }
    trend += "|r-1|(" + fmt(as[i]) + ") = " + fmt(dev[i]);
  }
  rep.checks.push_back(
      make_check("deviation_decreasing", decreasing ? 1.0 : 0.0, 1.0, decreasing, trend));
  rep.checks.push_back(make_check("final_ratio", dev.back(), opts.final_tol,
                                  dev.back() <= opts.final_tol,
                                  "|r - 1| at a = " + fmt(as.back())));
  return rep;
}

FitReport verify_eigenfunction_convergence(int n, const std::vector<double>& eps_grid, int modes) {
  check_eps_grid(eps_grid);
  if (eps_grid.size() < 2) fail(ErrorCode::fit_quality, "convergence fit needs two eps values");
  const auto base = threshold_resonance(n, modes);
  const auto fields = parallel_map<ResonanceField>(eps_grid.size(), [&](std::size_t i) {
    return bound_state_field(n, base.a_ref + eps_grid[i], modes);
  });

  FitReport rep;
  rep.model = "||b(a_n + eps) - b(a_n)|| <= C eps";
  const auto k = static_cast<Eigen::Index>(eps_grid.size());
  Eigen::MatrixXd x(k, 2);
  Eigen::VectorXd y(k);
  double c_bound = 0.0, num = 0.0, den = 0.0;
  std::vector<double> dist(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double e = eps_grid[i];
    dist[i] = (fields[i].b - base.b).norm();
    c_bound = std::max(c_bound, dist[i] / e);
    num += dist[i] * e;
    den += e * e;
    x(i, 0) = 1.0;
    x(i, 1) = std::log(e);
    y(i) = std::log(dist[i]);
  }
  const double c_fit = num / den;
  double rss = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    rep.sample.push_back({eps_grid[i], dist[i], c_fit * eps_grid[i]});
    rss += std::pow(dist[i] - c_fit * eps_grid[i], 2);
  }
  rep.residual_norm = std::sqrt(rss);
  Eigen::VectorXd resid;
  const Eigen::VectorXd line = least_squares(x, y, resid);
  rep.coefficients = {{"C", c_bound}, {"C_least_squares", c_fit}, {"loglog_slope", line(1)}};

  // Linear vanishing: the ratio dist / eps stays bounded as eps decreases,
  // i.e. it does not grow from the coarse to the fine end of the grid.
  const double r_small = dist.front() / eps_grid.front();
  const double r_large = dist.back() / eps_grid.back();
  rep.checks.push_back(make_check("ratio_bounded", r_small / r_large, 1.5,
                                  r_small <= 1.5 * r_large,
                                  "dist/eps at eps_min vs eps_max: " + fmt(r_small) + " vs " +
                                      fmt(r_large)));
  rep.checks.push_back(make_check("loglog_slope", line(1), 0.1, std::abs(line(1) - 1.0) <= 0.1,
                                  "log-log slope of the distance"));
  return rep;
}

}  // namespace stripwin
