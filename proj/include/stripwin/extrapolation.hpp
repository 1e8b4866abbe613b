#pragma once

#include <span>
#include <vector>

namespace stripwin {

/// Truncation order with its extrapolation ladder.
///
/// The mode-matching error of every computed quantity has an expansion in
/// powers of 1/modes, led by a 1/modes term from the corner singularity.
/// Quantities are therefore computed at modes / 2^(levels-1), ..., modes / 2,
/// modes and extrapolated to 1/modes -> 0. levels = 1 returns the raw
/// truncated value.
struct Truncation {
  int modes = 64;
  int levels = 3;
};

/// Ascending truncation orders of the ladder. Throws ErrorCode::config when
/// modes is not divisible by 2^(levels-1) or the coarsest level has fewer
/// than 4 modes (levels > 1).
std::vector<int> truncation_ladder(const Truncation& t);

/// Value at 1/modes = 0 of the polynomial in 1/modes through the samples.
double extrapolate_in_modes(std::span<const int> modes, std::span<const double> values);

/// Polynomial extrapolation to h = 0 through (h_i, values_i) (Neville).
double extrapolate_to_zero(std::span<const double> h, std::span<const double> values);

/// Two-grid Richardson extrapolation for an error term of the given order:
/// (2^order lam_h2 - lam_h) / (2^order - 1).
double richardson(double lam_h, double lam_h2, double order);

}  // namespace stripwin
