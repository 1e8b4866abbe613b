#include "stripwin/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stripwin/errors.hpp"
#include "stripwin/workers.hpp"

namespace stripwin {
namespace {

int det_sign(const MatchingSystem& system, double a, double eps) {
  return system.regularized_det(a, eps).sign;
}

// One Newton step on the determinant, kept only if it stays in the bracket.
double newton_polish(const MatchingSystem& system, double a, double lo, double hi) {
  const double x = 0.5 * (lo + hi);
  const double h = std::max(1e-9, 4.0 * (hi - lo));
  if (x - h <= 0.25 || x + h > 1.0) return x;
  const auto f0 = system.regularized_det(a, x);
  if (f0.sign == 0) return x;
  const auto fm = system.regularized_det(a, x - h);
  const auto fp = system.regularized_det(a, x + h);
  const double ref = f0.log_abs;
  auto rel = [ref](const SignedLogDet& d) { return d.sign * std::exp(d.log_abs - ref); };
  const double slope = (rel(fp) - rel(fm)) / (2.0 * h);
  if (slope == 0.0 || !std::isfinite(slope)) return x;
  const double step = x - f0.sign / slope;
  return (step > lo && step < hi) ? step : x;
}

}  // namespace

std::vector<double> scan_grid(const ScanOptions& opts) {
  if (opts.samples < 2 || opts.threshold_samples < 2)
    fail(ErrorCode::config, "scan needs at least two samples per segment");
  if (!(opts.near_threshold_span > opts.smallest_gap && opts.smallest_gap > 0.0))
    fail(ErrorCode::config, "near-threshold span must exceed the smallest gap");
  std::vector<double> grid;
  const double lo = opts.eps_floor;
  const double hi = 1.0 - opts.near_threshold_span;
  if (hi > lo) {
    for (int i = 0; i < opts.samples; ++i)
      grid.push_back(lo + (hi - lo) * i / (opts.samples - 1));
  }
  const double ratio =
      std::log(opts.smallest_gap / opts.near_threshold_span) / (opts.threshold_samples - 1);
  for (int i = 1; i < opts.threshold_samples; ++i)
    grid.push_back(1.0 - opts.near_threshold_span * std::exp(ratio * i));

  std::vector<double> out;
  for (double e : grid)
    if (e > 0.25 && e < 1.0) out.push_back(e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<RawRoot> sector_roots(const MatchingSystem& system, double a, const ScanOptions& opts) {
  const auto grid = scan_grid(opts);
  std::vector<RawRoot> roots;
  if (grid.size() < 2) return roots;

  std::vector<int> signs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) signs[i] = det_sign(system, a, grid[i]);

  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double lo = grid[i], hi = grid[i + 1];
    int s_lo = signs[i];
    const int s_hi = signs[i + 1];
    double exact = -1.0;
    if (s_lo == 0) {
      exact = lo;
    } else if (s_hi == 0 || s_lo == s_hi) {
      continue;  // exact zeros on the right end are handled by the next cell
    } else {
      while (hi - lo > opts.root_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const int s = det_sign(system, a, mid);
        if (s == 0) {
          exact = mid;
          break;
        }
        if (s == s_lo) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
    }
    const double eps = exact >= 0.0 ? exact : newton_polish(system, a, lo, hi);
    const double ratio = system.singular_values(a, eps).ratio();
    if (ratio <= opts.singular_ratio) {
      roots.push_back({eps, ratio});
    } else if (ratio < opts.spurious_ratio) {
      std::ostringstream os;
      os << "unresolved sign change on eps in [" << grid[i] << ", " << grid[i + 1]
         << "] at a = " << a << " (" << to_string(system.parity()) << ", " << system.modes()
         << " modes): sigma ratio " << ratio;
      fail(ErrorCode::resolution, os.str());
    }
  }
  return roots;
}

std::vector<SpectralPoint> eigenvalues_in_sector(double a, Parity parity, const Truncation& t,
                                                 const ScanOptions& opts) {
  if (!(a >= 0.0)) fail(ErrorCode::config, "window half-width must be non-negative");
  std::vector<SpectralPoint> points;
  if (a == 0.0) return points;

  const auto ladder = truncation_ladder(t);
  const auto levels = parallel_map<std::vector<RawRoot>>(ladder.size(), [&](std::size_t i) {
    return sector_roots(MatchingSystem(parity, ladder[i]), a, opts);
  });

  const auto& top = levels.back();
  const int offset = parity == Parity::even ? 0 : 1;
  for (std::size_t rank = 0; rank < top.size(); ++rank) {
    std::vector<int> modes;
    std::vector<double> decay;
    for (std::size_t l = 0; l < ladder.size(); ++l) {
      if (rank < levels[l].size()) {
        modes.push_back(ladder[l]);
        decay.push_back(std::sqrt(1.0 - levels[l][rank].eps));
      }
    }
    const double m = extrapolate_in_modes(modes, decay);
    if (!(m > 0.0)) {
      // The top-level root sits between the truncated and the limiting
      // threshold: it does not survive extrapolation.
      if (rank + 1 == top.size()) break;
      std::ostringstream os;
      os << "extrapolated decay rate " << m << " for sector rank " << rank << " at a = " << a;
      fail(ErrorCode::consistency, os.str());
    }
    points.push_back(
        spectral_point_from_decay(static_cast<int>(2 * rank) + offset, a, parity, m));
  }
  return points;
}

SpectrumResult full_spectrum(double a, const Truncation& t, const ScanOptions& opts) {
  SpectrumResult result{a, {}, t, opts};
  if (!(a >= 0.0)) fail(ErrorCode::config, "window half-width must be non-negative");
  if (a == 0.0) return result;

  auto even = eigenvalues_in_sector(a, Parity::even, t, opts);
  auto odd = eigenvalues_in_sector(a, Parity::odd, t, opts);
  result.points = std::move(even);
  result.points.insert(result.points.end(), odd.begin(), odd.end());
  std::sort(result.points.begin(), result.points.end(),
            [](const SpectralPoint& x, const SpectralPoint& y) { return x.eps < y.eps; });
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    auto& p = result.points[i];
    if (p.parity != parity_of_index(static_cast<unsigned>(i))) {
      std::ostringstream os;
      os << "parity alternation violated at index " << i << " (a = " << a
         << "); rerun with more modes";
      fail(ErrorCode::consistency, os.str());
    }
    p.index = static_cast<int>(i);
  }
  return result;
}

SpectralPoint eigenvalue(int n, double a, const Truncation& t, const ScanOptions& opts) {
  if (n < 0) fail(ErrorCode::config, "eigenvalue index must be non-negative");
  const Parity parity = parity_of_index(static_cast<unsigned>(n));
  const auto points = eigenvalues_in_sector(a, parity, t, opts);
  for (const auto& p : points)
    if (p.index == n) return p;
  std::ostringstream os;
  os << "eigenvalue " << n << " does not exist at a = " << a;
  fail(ErrorCode::curve_gap, os.str());
}

std::vector<std::pair<double, double>> eigenvalue_curve(int n, const std::vector<double>& a_grid,
                                                        const Truncation& t,
                                                        const ScanOptions& opts) {
  std::vector<std::pair<double, double>> curve(a_grid.size());
  parallel_for(a_grid.size(), [&](std::size_t i) {
    curve[i] = {a_grid[i], eigenvalue(n, a_grid[i], t, opts).lambda};
  });
  return curve;
}

}  // namespace stripwin
