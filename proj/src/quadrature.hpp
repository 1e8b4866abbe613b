#pragma once

#include <vector>

namespace stripwin::detail {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n points (Newton on the Legendre recurrence).
GaussRule gauss_legendre(int n);

}  // namespace stripwin::detail
