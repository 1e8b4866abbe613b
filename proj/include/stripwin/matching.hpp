#pragma once

#include <Eigen/Core>

#include "stripwin/geometry.hpp"
#include "stripwin/modal.hpp"

namespace stripwin {

/// Truncated matching matrix C_jk = (q_j + p_term_k) (chi_j, phi_k),
/// 1 <= j, k <= modes. Solutions of C b = 0 are the window coefficients of
/// an eigenfunction (or of the threshold resonance at eps = 1).
struct MatchingMatrix {
  double a = 0.0;
  double eps = 0.0;
  Parity parity = Parity::even;
  int modes = 0;
  Eigen::MatrixXd entries;
};

/// Determinant kept as sign and log-magnitude; raw values overflow past
/// roughly 170 modes.
struct SignedLogDet {
  int sign = 0;
  double log_abs = 0.0;
  double value() const;
};

struct SingularRange {
  double smallest = 0.0;
  double largest = 0.0;
  double ratio() const { return largest > 0.0 ? smallest / largest : 0.0; }
};

/// Unit null vector of the matching system.
///
/// `b` holds the window coefficients of C b = 0; `b_scaled` is the same
/// vector for the regularized matrix, whose first entry is b_1 divided by
/// cos(beta_1 a) (even) or sin(beta_1 a) (odd). Field evaluation uses
/// `b_scaled` so no division by the column scale is ever needed.
struct KernelVector {
  Eigen::VectorXd b;
  Eigen::VectorXd b_scaled;
  double column_scale = 1.0;
  double residual = 0.0;  // ||M v|| / ||M||_2 for the regularized matrix M
};

/// Matching system for one parity sector and truncation order. Holds the
/// overlap table so that parameter sweeps reuse it.
class MatchingSystem {
 public:
  MatchingSystem(Parity parity, int modes);

  Parity parity() const noexcept { return parity_; }
  int modes() const noexcept { return overlaps_.cols(); }
  const OverlapTable& overlaps() const noexcept { return overlaps_; }

  /// Raw matrix. Throws ErrorCode::pole inside the guard band of a tan/cot
  /// pole of the first window mode.
  MatchingMatrix assemble(double a, double eps) const;

  /// cos(beta_1 a) (even) or sin(beta_1 a) (odd) when the first window mode
  /// oscillates, otherwise 1.
  double column_scale(double a, double eps) const;

  /// C with its first column multiplied by column_scale(); pole-free.
  Eigen::MatrixXd regularized(double a, double eps) const;

  SignedLogDet regularized_det(double a, double eps) const;
  SingularRange singular_values(double a, double eps) const;

  /// Throws ErrorCode::not_singular when the residual exceeds `tol`.
  KernelVector kernel(double a, double eps, double tol = 1e-8) const;

 private:
  void check_arguments(double a, double eps) const;

  Parity parity_;
  OverlapTable overlaps_;
};

MatchingMatrix assemble(double a, double eps, Parity parity, int modes);
SignedLogDet regularized_det(double a, double eps, Parity parity, int modes);
/// Smallest singular value of the regularized matrix.
double smallest_singular(double a, double eps, Parity parity, int modes);
KernelVector kernel(double a, double eps, Parity parity, int modes, double tol = 1e-8);

}  // namespace stripwin
