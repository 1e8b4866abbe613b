#pragma once

#include <utility>
#include <vector>

#include "stripwin/extrapolation.hpp"
#include "stripwin/geometry.hpp"
#include "stripwin/matching.hpp"

namespace stripwin {

/// Scan and root-acceptance settings for eigenvalue searches in eps.
struct ScanOptions {
  int samples = 2000;               // uniform samples on [eps_floor, 1 - near_threshold_span]
  int threshold_samples = 200;      // geometric samples of the gap in (smallest_gap, span]
  double near_threshold_span = 0.1;
  double smallest_gap = 1e-12;
  double eps_floor = 0.25 + 1e-9;
  double root_tol = 1e-12;          // bisection width in eps
  double singular_ratio = 1e-7;     // accept when sigma_min / sigma_max is below this
  double spurious_ratio = 1e-3;     // reject silently when above this
};

/// Ascending eps grid described by the options.
std::vector<double> scan_grid(const ScanOptions& opts);

/// Verified root of one truncation level.
struct RawRoot {
  double eps = 0.0;
  double singular_ratio = 0.0;
};

/// All verified roots of the regularized determinant of `system` on the scan
/// grid. Throws ErrorCode::resolution when a sign change converges to a point
/// that is neither clearly singular nor clearly regular.
std::vector<RawRoot> sector_roots(const MatchingSystem& system, double a, const ScanOptions& opts);

struct SpectrumResult {
  double a = 0.0;
  std::vector<SpectralPoint> points;  // ascending in lambda
  Truncation truncation;
  ScanOptions tolerances;
};

/// Eigenvalues of one parity sector, extrapolated over the truncation
/// ladder. Point indices are provisional (2 * rank + parity) until merged by
/// full_spectrum().
std::vector<SpectralPoint> eigenvalues_in_sector(double a, Parity parity, const Truncation& t,
                                                 const ScanOptions& opts = {});

/// Both sectors merged and checked for parity alternation. a = 0 yields an
/// empty spectrum.
SpectrumResult full_spectrum(double a, const Truncation& t, const ScanOptions& opts = {});

/// lambda_n sampled along `a_grid`. Throws ErrorCode::curve_gap when the
/// branch does not exist at some grid point.
std::vector<std::pair<double, double>> eigenvalue_curve(int n, const std::vector<double>& a_grid,
                                                        const Truncation& t,
                                                        const ScanOptions& opts = {});

/// The n-th eigenvalue at half-width a (searched in its own sector only).
/// Throws ErrorCode::curve_gap when it does not exist.
SpectralPoint eigenvalue(int n, double a, const Truncation& t, const ScanOptions& opts = {});

}  // namespace stripwin
