#include "stripwin/thresholds.hpp"

#include <cmath>
#include <sstream>

#include "stripwin/errors.hpp"
#include "stripwin/workers.hpp"

namespace stripwin {
namespace {

int sign_at(const MatchingSystem& system, double a) {
  return system.regularized_det(a, 1.0).sign;
}

double bisect(const MatchingSystem& system, double lo, double hi, int s_lo, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const int s = sign_at(system, mid);
    if (s == 0) return mid;
    if (s == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Crossing {
  int count = 0;
  double lo = 0.0, hi = 0.0;
  int s_lo = 0;
};

Crossing scan(const MatchingSystem& system, double lo, double hi, int points) {
  Crossing c;
  double prev_x = lo + (hi - lo) / (points + 1);
  int prev = sign_at(system, prev_x);
  for (int i = 2; i <= points; ++i) {
    const double x = lo + (hi - lo) * i / (points + 1);
    const int s = sign_at(system, x);
    if (s != prev) {
      if (c.count == 0) c = {0, prev_x, x, prev};
      ++c.count;
    }
    prev = s;
    prev_x = x;
  }
  return c;
}

}  // namespace

std::pair<double, double> threshold_bracket(int n) {
  const double step = pi / std::sqrt(3.0);
  return {n * step, (n + 1) * step};
}

double raw_threshold(const MatchingSystem& system, int n, const ThresholdOptions& opts,
                     std::optional<double> hint) {
  if (n < 1) fail(ErrorCode::config, "raw_threshold requires n >= 1");
  if (system.parity() != parity_of_index(static_cast<unsigned>(n)))
    fail(ErrorCode::config, "matching system parity does not match threshold index");
  const auto [lo, hi] = threshold_bracket(n);

  if (hint) {
    // Truncated thresholds move by O(1/modes); a narrow window normally
    // holds the root of the next level.
    const double w = 0.05;
    const double wlo = std::max(lo, *hint - w), whi = std::min(hi, *hint + w);
    const Crossing c = scan(system, wlo, whi, 40);
    if (c.count == 1) return bisect(system, c.lo, c.hi, c.s_lo, opts.tol);
  }
  const Crossing c = scan(system, lo, hi, opts.scan_points);
  if (c.count != 1) {
    std::ostringstream os;
    os << "threshold n = " << n << " at " << system.modes() << " modes: " << c.count
       << " sign changes on a " << opts.scan_points << "-point scan of (" << lo << ", " << hi
       << "), expected exactly one";
    fail(ErrorCode::bracket_anomaly, os.str());
  }
  return bisect(system, c.lo, c.hi, c.s_lo, opts.tol);
}

ThresholdRecord find_threshold(int n, const Truncation& t, const ThresholdOptions& opts) {
  if (n < 0) fail(ErrorCode::config, "threshold index must be non-negative");
  ThresholdRecord rec;
  rec.n = n;
  rec.parity = parity_of_index(static_cast<unsigned>(n));
  if (n == 0) return rec;

  const auto [lo, hi] = threshold_bracket(n);
  rec.bracket_lo = lo;
  rec.bracket_hi = hi;
  rec.ladder = truncation_ladder(t);
  rec.modes = t.modes;
  rec.level_values = parallel_map<double>(rec.ladder.size(), [&](std::size_t i) {
    return raw_threshold(MatchingSystem(rec.parity, rec.ladder[i]), n, opts);
  });
  rec.a_n = extrapolate_in_modes(rec.ladder, rec.level_values);
  if (!(rec.a_n > lo && rec.a_n < hi)) {
    std::ostringstream os;
    os << "extrapolated a_" << n << " = " << rec.a_n << " left the bracket (" << lo << ", " << hi
       << ")";
    fail(ErrorCode::convergence, os.str());
  }
  const MatchingSystem top(rec.parity, t.modes);
  rec.residual = top.kernel(rec.level_values.back(), 1.0, opts.kernel_tol).residual;

  if (opts.check_doubling) {
    ThresholdOptions inner = opts;
    inner.check_doubling = false;
    const auto doubled = find_threshold(n, Truncation{2 * t.modes, t.levels}, inner);
    if (std::abs(doubled.a_n - rec.a_n) > opts.stability_tol) {
      std::ostringstream os;
      os << "a_" << n << " moved by " << std::abs(doubled.a_n - rec.a_n) << " from "
         << t.modes << " to " << 2 * t.modes << " modes (tolerance " << opts.stability_tol << ")";
      fail(ErrorCode::convergence, os.str());
    }
  }
  return rec;
}

std::vector<ThresholdRecord> threshold_table(int n_max, const Truncation& t,
                                             const ThresholdOptions& opts) {
  if (n_max < 0) fail(ErrorCode::config, "n_max must be non-negative");
  std::vector<ThresholdRecord> table(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) table[n] = find_threshold(n, t, opts);
  for (int n = 1; n <= n_max; ++n) {
    if (!(table[n].a_n > table[n - 1].a_n)) {
      std::ostringstream os;
      os << "thresholds not increasing: a_" << n << " = " << table[n].a_n << " <= a_" << n - 1
         << " = " << table[n - 1].a_n;
      fail(ErrorCode::convergence, os.str());
    }
  }
  return table;
}

}  // namespace stripwin
