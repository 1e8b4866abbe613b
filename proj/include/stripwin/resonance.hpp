#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "stripwin/geometry.hpp"
#include "stripwin/matching.hpp"

namespace stripwin {

/// Mode-matching field in the half-strip x1 >= 0 (units d = pi):
///
///   x1 <= a_ref:  sum_k b_k w_k(x1) phi_k(x2)
///   x1 >= a_ref:  sum_j c_j exp(-q_j (x1 - a_ref)) chi_j(x2)
///
/// where w_k is cosh/sinh (or cos/sin for the oscillatory first mode)
/// normalized to w_k(a_ref) = 1. Normalized so that c1 = 1, i.e. the far field
/// of the threshold resonance is chi_1 = sqrt(2/pi) sin(x2).
struct ResonanceField {
  int n = 0;
  Parity parity = Parity::even;
  double a_ref = 0.0;
  double eps = 1.0;
  Eigen::VectorXd b;  // trace coefficients at x1 = a_ref
  double b1_scaled = 0.0;  // b_1 / column scale; amplitude of cos(beta x1) or sin(beta x1)
  Eigen::VectorXd c;
  double c1 = 0.0;
  std::optional<double> alpha;
  int modes = 0;
  double kernel_residual = 0.0;

  bool is_threshold() const { return eps == 1.0; }
};

/// Builds a normalized field from a kernel vector of the matching system.
ResonanceField make_field(const MatchingSystem& system, int n, double a, double eps,
                          const KernelVector& kv);

/// Rescales so that c1 = 1. Idempotent on normalized fields.
ResonanceField normalized(ResonanceField field);

/// Threshold resonance at the truncated threshold a_n(modes), where the
/// truncated matching matrix at eps = 1 is exactly singular. `hint` narrows
/// the threshold search.
ResonanceField threshold_resonance(int n, int modes, std::optional<double> hint = std::nullopt);

/// Eigenfunction of index n at half-width a, built at the truncated root of
/// the same level. Throws ErrorCode::curve_gap when the level has no such
/// root.
ResonanceField bound_state_field(int n, double a, int modes);

/// Radius below which pointwise values near the corner (a_ref, 0) are
/// unreliable for the given truncation: 0.02 d at 512 modes, scaled by 1/modes.
double accuracy_radius(int modes);

struct FieldValue {
  double value = 0.0;
  bool accuracy_warning = false;
};

/// Evaluates the field; x1 < 0 uses the parity extension. x1 == a_ref uses the
/// outside series unless `prefer_inside` is set.
FieldValue eval_field(const ResonanceField& field, double x1, double x2,
                      bool prefer_inside = false);

/// Series of one side only, for interface checks (no parity extension).
double eval_inside(const ResonanceField& field, double x1, double x2);
double eval_outside(const ResonanceField& field, double x1, double x2);

enum class EdgeMethod {
  arc,  // projection on sin(theta/2) over half circles around the corner
  ray,  // three-term fit along x1 = a_ref
};

struct EdgeFit {
  double alpha = 0.0;
  double stderr_alpha = 0.0;
  double relative_residual = 0.0;  // rms residual / rms leading term
  EdgeMethod method = EdgeMethod::arc;
  std::vector<double> radii;
  std::vector<double> samples;  // projected or sampled values per radius
  bool accuracy_warning = false;
};

/// Radii in units d = pi: `count` equispaced values on [lo, hi] * pi.
std::vector<double> corner_radii(double lo = 0.02, double hi = 0.25, int count = 12);

/// Corner coefficient alpha of psi ~ alpha r^(1/2) sin(theta / 2), theta
/// measured from the Dirichlet side x1 > a_ref.
///
/// The local expansion at the junction contains only half-integer Bessel
/// terms J_(k-1/2)(kappa r) sin((k-1/2) theta), kappa = sqrt(eps), so the arc
/// projection (2/pi) int_0^pi psi sin(theta/2) dtheta isolates
/// alpha sin(kappa r) / (kappa sqrt r) exactly; alpha is its least-squares
/// amplitude over the radii. The ray method fits the first three Bessel
/// terms at theta = pi/2. Throws ErrorCode::fit_quality when the relative
/// residual exceeds `max_residual`.
EdgeFit edge_coefficient(const ResonanceField& field, const std::vector<double>& radii,
                         EdgeMethod method = EdgeMethod::arc, double max_residual = 0.05);

}  // namespace stripwin
