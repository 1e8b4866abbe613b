#pragma once

#include <optional>
#include <vector>

#include "stripwin/extrapolation.hpp"
#include "stripwin/geometry.hpp"
#include "stripwin/matching.hpp"

namespace stripwin {

/// Critical half-width a_n at which the n-th eigenvalue leaves the continuum.
/// n = 0 is the special record a_0 = 0 with empty numerics.
struct ThresholdRecord {
  int n = 0;
  Parity parity = Parity::even;
  double a_n = 0.0;
  double residual = 0.0;  // kernel residual at the finest level
  int modes = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<int> ladder;             // truncation orders used
  std::vector<double> level_values;    // unextrapolated a_n per ladder level
};

struct ThresholdOptions {
  int scan_points = 400;
  double tol = 1e-12;          // bisection width in a
  double kernel_tol = 1e-8;
  bool check_doubling = false; // recompute with twice the modes and compare
  double stability_tol = 1e-6;
};

/// Open bracket (n pi / sqrt 3, (n + 1) pi / sqrt 3) in units d = pi.
std::pair<double, double> threshold_bracket(int n);

/// Threshold of a single truncation level: root of a -> det C_reg(a, 1) in the
/// bracket. Scans `scan_points` interior points and requires exactly one sign
/// change (ErrorCode::bracket_anomaly otherwise). With a `hint`, a short
/// window around it is tried first.
double raw_threshold(const MatchingSystem& system, int n, const ThresholdOptions& opts = {},
                     std::optional<double> hint = std::nullopt);

ThresholdRecord find_threshold(int n, const Truncation& t, const ThresholdOptions& opts = {});

/// Records for n = 0 .. n_max; a_n strictly increasing.
std::vector<ThresholdRecord> threshold_table(int n_max, const Truncation& t,
                                             const ThresholdOptions& opts = {});

}  // namespace stripwin
