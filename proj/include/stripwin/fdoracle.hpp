#pragma once

#include <limits>
#include <vector>

#include <Eigen/SparseCore>

#include "stripwin/geometry.hpp"

namespace stripwin {

/// Finite-difference half-strip [0, L] x [0, pi] (units d = pi).
///
/// `h` is the target spacing; the x2 spacing is pi / round(pi / h) and the x1
/// spacing is adjusted so that x1 = a is a node (that junction node carries
/// the Dirichlet value). `hx`, when set, fixes the x1 spacing instead; a must
/// then be a multiple of it. `estimate`, when set, is a guess of the lowest
/// requested eigenvalue used to bracket it without a full search.
struct FdConfig {
  double a = 0.0;
  Parity parity = Parity::even;
  double L = 0.0;
  double h = 0.0;
  int count = 1;
  double hx = std::numeric_limits<double>::quiet_NaN();
  double estimate = std::numeric_limits<double>::quiet_NaN();
};

struct FdGrid {
  int nx = 0;       // x1 nodes 0..nx (node nx at x1 = L)
  int ny = 0;       // x2 nodes 0..ny (node ny at x2 = pi)
  int junction = 0; // x1 index of the node at x1 = a
  double hx = 0.0;
  double hy = 0.0;
  int unknowns = 0;
};

FdGrid fd_grid(const FdConfig& cfg);

/// Symmetric matrix W^(-1/2) K W^(-1/2) of the 5-point Laplacian, where K is
/// the edge-weighted stiffness (ghost-node reflection at Neumann sides) and W
/// the nodal area weights.
Eigen::SparseMatrix<double> fd_operator(const FdConfig& cfg);

struct FdResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> residuals;    // ||A u - lambda u|| per eigenpair
  bool truncation_warning = false;  // sqrt(1 - lambda) (L - a) < 5
  FdGrid grid;
};

/// Lowest `count` eigenvalues: Sylvester-inertia bisection on LDL^T
/// factorizations of A - sigma I brackets each eigenvalue, then shift-invert
/// inverse iteration with Rayleigh-quotient shift updates converges it.
/// Throws ErrorCode::iteration when the iteration stalls.
FdResult fd_eigenvalues(const FdConfig& cfg);

struct OracleOptions {
  int base_cells = 32;          // x2 cells of the coarsest grid
  int levels = 3;               // grids h, h/2, h/4, ...
  double decay_lengths = 6.0;   // L - a >= decay_lengths / m
  double max_length = 400.0;
  int pilot_cells = 16;
};

struct OracleEstimate {
  double a = 0.0;
  Parity parity = Parity::even;
  int rank = 0;                // within the parity sector
  double L = 0.0;
  std::vector<double> h;       // x2 spacing per level
  std::vector<double> lambda;  // raw eigenvalue per level
  double extrapolated = 0.0;
  double order1 = 0.0;         // two finest grids, first-order Richardson
  std::vector<double> convergence_factors;  // |dl(h)| / |dl(h/2)|
  bool truncation_warning = false;
};

/// Sector eigenvalue of the given rank, extrapolated in h. The domain length
/// comes from a coarse pilot solve. The 5-point scheme converges at first
/// order here (corner singularity), so the extrapolation removes the h and
/// h^2 terms (h alone with two levels).
OracleEstimate fd_oracle(double a, Parity parity, int rank = 0, const OracleOptions& opts = {});

}  // namespace stripwin
