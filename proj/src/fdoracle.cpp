#include "stripwin/fdoracle.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <sstream>

#include "stripwin/errors.hpp"
#include "stripwin/extrapolation.hpp"

namespace stripwin {
namespace {

using SpMat = Eigen::SparseMatrix<double>;

void check_config(const FdConfig& cfg) {
  if (!(cfg.h > 0.0)) fail(ErrorCode::config, "grid spacing must be positive");
  if (!(cfg.a >= 0.0)) fail(ErrorCode::config, "window half-width must be non-negative");
  if (!(cfg.L > cfg.a + 2.0)) fail(ErrorCode::config, "domain length must exceed a + 2");
  if (cfg.count < 1) fail(ErrorCode::config, "at least one eigenvalue must be requested");
}

class ShiftedSolver {
 public:
  explicit ShiftedSolver(const SpMat& a) : a_(a), eye_(a.rows(), a.cols()) {
    eye_.setIdentity();
    ldlt_.analyzePattern(a_);
  }

  // Number of eigenvalues below sigma (Sylvester inertia of LDL^T).
  int count_below(double sigma) {
    factorize(sigma);
    const auto& d = ldlt_.vectorD();
    int neg = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i) neg += d(i) < 0.0;
    return neg;
  }

  void factorize(double sigma) {
    ldlt_.factorize(a_ - sigma * eye_);
    if (ldlt_.info() != Eigen::Success) {
      ldlt_.factorize(a_ - (sigma * (1.0 + 1e-12) + 1e-14) * eye_);
      if (ldlt_.info() != Eigen::Success) fail(ErrorCode::iteration, "LDL^T factorization failed");
    }
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const { return ldlt_.solve(b); }

 private:
  const SpMat& a_;
  SpMat eye_;
  Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
};

struct Bracket {
  double lo, hi;
  int c_lo, c_hi;
};

// Bracket [lo, hi] holding exactly eigenvalue `target` (0-based), narrowed to
// `width`.
Bracket isolate(ShiftedSolver& s, int target, double estimate, double width) {
  Bracket b{};
  if (std::isfinite(estimate)) {
    double delta = std::max(4.0 * width, 1e-3);
    b = {estimate - delta, estimate + delta, 0, 0};
    b.c_lo = b.lo > 0.0 ? s.count_below(b.lo) : 0;
    b.c_hi = s.count_below(b.hi);
    while (b.c_lo > target) {
      b.hi = b.lo;
      b.c_hi = b.c_lo;
      delta *= 2.0;
      b.lo = std::max(0.0, b.lo - delta);
      b.c_lo = b.lo > 0.0 ? s.count_below(b.lo) : 0;
    }
  } else {
    b = {0.0, 1.0, 0, s.count_below(1.0)};
  }
  double grow = std::max(b.hi - b.lo, 0.1);
  int guard = 0;
  while (b.c_hi <= target) {
    if (++guard > 60) fail(ErrorCode::iteration, "could not bracket the requested eigenvalue");
    b.lo = b.hi;
    b.c_lo = b.c_hi;
    b.hi += grow;
    grow *= 2.0;
    b.c_hi = s.count_below(b.hi);
  }
  guard = 0;
  while (b.c_lo != target || b.c_hi != target + 1 || b.hi - b.lo > width) {
    if (++guard > 200) fail(ErrorCode::iteration, "eigenvalue bisection did not separate roots");
    const double mid = 0.5 * (b.lo + b.hi);
    const int c = s.count_below(mid);
    if (c <= target) {
      b.lo = mid;
      b.c_lo = c;
    } else {
      b.hi = mid;
      b.c_hi = c;
    }
  }
  return b;
}

struct Pair {
  double lambda;
  double residual;
};

Pair inverse_iteration(const SpMat& a, ShiftedSolver& s, const Bracket& b) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = 1.0 + 0.1 * std::sin(0.37 * static_cast<double>(i));
  x.normalize();
  double sigma = 0.5 * (b.lo + b.hi);
  s.factorize(sigma);
  double rho = sigma, res = INFINITY;
  for (int it = 1; it <= 100; ++it) {
    x = s.solve(x);
    x.normalize();
    const Eigen::VectorXd ax = a * x;
    rho = x.dot(ax);
    res = (ax - rho * x).norm();
    if (res <= 1e-9 * std::max(1.0, std::abs(rho))) return {rho, res};
    // Rayleigh shift update once the quotient is inside the bracket.
    if (it % 3 == 0 && rho > b.lo && rho < b.hi && std::abs(rho - sigma) > 1e-13) {
      sigma = rho;
      s.factorize(sigma);
    }
  }
  std::ostringstream os;
  os << "inverse iteration did not converge (residual " << res << ")";
  fail(ErrorCode::iteration, os.str());
}

}  // namespace

FdGrid fd_grid(const FdConfig& cfg) {
  check_config(cfg);
  FdGrid g;
  g.ny = std::max(2, static_cast<int>(std::lround(pi / cfg.h)));
  g.hy = pi / g.ny;
  if (std::isfinite(cfg.hx)) {
    if (!(cfg.hx > 0.0)) fail(ErrorCode::config, "x1 spacing must be positive");
    g.junction = static_cast<int>(std::lround(cfg.a / cfg.hx));
    if (std::abs(g.junction * cfg.hx - cfg.a) > 1e-9 * std::max(1.0, cfg.a))
      fail(ErrorCode::config, "window half-width is not a multiple of the x1 spacing");
    g.hx = cfg.hx;
    g.nx = static_cast<int>(std::ceil(cfg.L / g.hx - 1e-9));
  } else if (cfg.a > 0.0) {
    g.junction = std::max(1, static_cast<int>(std::lround(cfg.a / g.hy)));
    g.hx = cfg.a / g.junction;
    g.nx = static_cast<int>(std::ceil(cfg.L / g.hx - 1e-9));
  } else {
    g.junction = 0;
    g.nx = std::max(2, static_cast<int>(std::lround(cfg.L / g.hy)));
    g.hx = cfg.L / g.nx;
  }
  return g;
}

SpMat fd_operator(const FdConfig& cfg) {
  FdGrid g = fd_grid(cfg);
  const int i0 = cfg.parity == Parity::even ? 0 : 1;
  // unknown index of node (i, j), or -1 for Dirichlet nodes
  auto index_grid = std::vector<int>(static_cast<std::size_t>(g.nx + 1) * (g.ny + 1), -1);
  auto at = [&](int i, int j) -> int& { return index_grid[static_cast<std::size_t>(i) * (g.ny + 1) + j]; };
  int count = 0;
  for (int i = i0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      if (j > 0 || i < g.junction) at(i, j) = count++;
  g.unknowns = count;

  auto weight = [&](int i, int j) {
    return g.hx * g.hy * (i == 0 ? 0.5 : 1.0) * (j == 0 ? 0.5 : 1.0);
  };
  std::vector<double> diag(count, 0.0), scale(count, 0.0);
  std::vector<Eigen::Triplet<double>> trip;
  auto edge = [&](int p, int q, double w) {
    if (p >= 0) diag[p] += w;
    if (q >= 0) diag[q] += w;
    if (p >= 0 && q >= 0) {
      trip.emplace_back(p, q, -w);
      trip.emplace_back(q, p, -w);
    }
  };
  for (int i = 0; i <= g.nx; ++i) {
    for (int j = 0; j <= g.ny; ++j) {
      const int p = at(i, j);
      if (p >= 0) scale[p] = 1.0 / std::sqrt(weight(i, j));
      if (i < g.nx) {
        const int q = at(i + 1, j);
        if (p >= 0 || q >= 0) edge(p, q, g.hy / g.hx * (j == 0 ? 0.5 : 1.0));
      }
      if (j < g.ny) {
        const int q = at(i, j + 1);
        if (p >= 0 || q >= 0) edge(p, q, g.hx / g.hy * (i == 0 ? 0.5 : 1.0));
      }
    }
  }
  for (int p = 0; p < count; ++p) trip.emplace_back(p, p, diag[p]);
  for (auto& t : trip) t = {t.row(), t.col(), t.value() * scale[t.row()] * scale[t.col()]};
  SpMat a(count, count);
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

FdResult fd_eigenvalues(const FdConfig& cfg) {
  FdResult out;
  out.grid = fd_grid(cfg);
  const SpMat a = fd_operator(cfg);
  out.grid.unknowns = static_cast<int>(a.rows());
  if (cfg.count > a.rows()) fail(ErrorCode::config, "more eigenvalues requested than unknowns");
  ShiftedSolver solver(a);
  for (int t = 0; t < cfg.count; ++t) {
    const double est = t == 0 ? cfg.estimate : std::numeric_limits<double>::quiet_NaN();
    const Bracket b = isolate(solver, t, est, 2e-3);
    const Pair p = inverse_iteration(a, solver, b);
    out.eigenvalues.push_back(p.lambda);
    out.residuals.push_back(p.residual);
  }
  const double lam = out.eigenvalues.back();
  const double length = out.grid.nx * out.grid.hx - cfg.a;
  out.truncation_warning = !(lam < 1.0) || std::sqrt(1.0 - lam) * length < 5.0;
  return out;
}

OracleEstimate fd_oracle(double a, Parity parity, int rank, const OracleOptions& opts) {
  if (!(a > 0.0)) fail(ErrorCode::config, "oracle needs a > 0");
  if (rank < 0 || opts.levels < 2 || opts.base_cells < 4 || opts.pilot_cells < 4)
    fail(ErrorCode::config, "invalid oracle options");
  OracleEstimate est;
  est.a = a;
  est.parity = parity;
  est.rank = rank;

  // Pilot on a coarse grid sizes the domain from the decay rate.
  double length = a + 40.0;
  double lam_pilot = 1.0;
  while (true) {
    const auto r = fd_eigenvalues({a, parity, length, pi / opts.pilot_cells, rank + 1});
    lam_pilot = r.eigenvalues.back();
    if (lam_pilot < 1.0 || length >= opts.max_length) break;
    length = std::min(opts.max_length, a + 2.0 * (length - a));
  }
  if (!(lam_pilot < 1.0)) {
    std::ostringstream os;
    os << "no bound state of rank " << rank << " (" << to_string(parity) << ") at a = " << a;
    fail(ErrorCode::convergence, os.str());
  }
  // Both spacings halve exactly from level to level, and L is a multiple of
  // every x1 spacing, so the error expansion in h is the same on all grids.
  const int junction0 = std::max(1, static_cast<int>(std::lround(a / (pi / opts.base_cells))));
  const double hx0 = a / junction0;
  const double tail = std::max(2.5, opts.decay_lengths / std::sqrt(1.0 - lam_pilot));
  est.L = std::min(opts.max_length, a + std::ceil(tail / hx0) * hx0);

  double guess = lam_pilot;
  for (int l = 0; l < opts.levels; ++l) {
    const double h = pi / (opts.base_cells << l);
    FdConfig cfg{a, parity, est.L, h, rank + 1, hx0 / (1 << l), rank == 0 ? guess : std::nan("")};
    const auto r = fd_eigenvalues(cfg);
    est.h.push_back(h);
    est.lambda.push_back(r.eigenvalues.back());
    est.truncation_warning = est.truncation_warning || r.truncation_warning;
    const std::size_t k = est.lambda.size();
    guess = k >= 2 ? est.lambda[k - 1] - 0.5 * (est.lambda[k - 2] - est.lambda[k - 1])
                   : est.lambda[k - 1];
  }
  for (std::size_t i = 2; i < est.lambda.size(); ++i) {
    const double d1 = est.lambda[i - 2] - est.lambda[i - 1];
    const double d2 = est.lambda[i - 1] - est.lambda[i];
    est.convergence_factors.push_back(std::abs(d1 / d2));
  }
  const std::size_t k = est.lambda.size();
  est.order1 = richardson(est.lambda[k - 2], est.lambda[k - 1], 1.0);
  est.extrapolated = k >= 3 ? extrapolate_to_zero(std::span<const double>(est.h).last(3),
                                                  std::span<const double>(est.lambda).last(3))
                            : est.order1;
  return est;
}

}  // namespace stripwin
