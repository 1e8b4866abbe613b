#pragma once

#include <string>
#include <vector>

#include "stripwin/extrapolation.hpp"
#include "stripwin/resonance.hpp"

namespace stripwin {

/// mu_n = (2 / a_n) int over the half-strip of |d psi / d x1|^2, evaluated
/// termwise from the coefficients of a normalized threshold field. Throws
/// ErrorCode::precondition unless eps == 1.
double mu_from_integral(const ResonanceField& field);

/// pi alpha^2 / 4.
double mu_from_alpha(double alpha);

struct MuOptions {
  Truncation truncation{256, 3};  // ladder for a_n and the integral
  int field_modes = 512;          // raw level used for the corner fit
  std::vector<double> radii = corner_radii();
  EdgeMethod method = EdgeMethod::arc;
};

struct MuReport {
  int n = 0;
  double a_n = 0.0;
  double mu_integral = 0.0;  // extrapolated over the ladder
  double alpha = 0.0;
  double alpha_stderr = 0.0;
  double mu_alpha = 0.0;
  double rel_diff = 0.0;
  int modes = 0;             // finest truncation used
  std::vector<int> ladder;
  std::vector<double> mu_levels;
  bool accuracy_warning = false;
};

MuReport mu_report(int n, const MuOptions& opts = {});

struct FitSample {
  double input = 0.0;
  double observed = 0.0;
  double predicted = 0.0;
};

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct FitReport {
  std::string model;
  std::vector<std::pair<std::string, double>> coefficients;
  double residual_norm = 0.0;
  std::vector<FitSample> sample;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool passed() const;
  double coefficient(const std::string& name) const;
};

/// {0.02, 0.04, ..., 0.20}.
std::vector<double> default_eps_grid();

struct LawOptions {
  Truncation truncation{128, 3};
  double slope_tol = 0.05;
  double mu_rel_tol = 0.02;
  double remainder_tol = 0.1;  // decay law: residual vs kappa * eps_max
};

/// gap(eps) = 1 - lambda_n(a_n + eps): log-log slope and the fit
/// gap = mu^2 eps^2 + C eps^3, compared with `mu_ref`.
FitReport verify_quadratic_law(int n, double a_n, double mu_ref, const std::vector<double>& eps_grid,
                               const LawOptions& opts = {});

/// m(eps) / eps = mu + kappa eps, compared with `mu_ref`. Needs at least two
/// grid points (ErrorCode::fit_quality otherwise).
FitReport verify_decay_law(int n, double a_n, double mu_ref, const std::vector<double>& eps_grid,
                           const LawOptions& opts = {});

struct PopovOptions {
  Truncation truncation{128, 3};
  double min_gap = 1e-10;
  double final_tol = 0.25;
};

/// r(a) = 4 (1 - lambda_0(a)) / a^4 over a descending grid.
FitReport verify_popov(const std::vector<double>& a_grid, const PopovOptions& opts = {});

/// ||b(a_n + eps) - b(a_n)|| against C eps at a single truncation level,
/// both fields normalized to c1 = 1.
FitReport verify_eigenfunction_convergence(int n, const std::vector<double>& eps_grid,
                                           int modes = 128);

}  // namespace stripwin
