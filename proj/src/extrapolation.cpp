#include "stripwin/extrapolation.hpp"

#include <cmath>
#include <sstream>

#include "stripwin/errors.hpp"

namespace stripwin {

std::vector<int> truncation_ladder(const Truncation& t) {
  if (t.modes < 1) fail(ErrorCode::config, "truncation order must be >= 1");
  if (t.levels < 1) fail(ErrorCode::config, "extrapolation needs at least one level");
  const int factor = 1 << (t.levels - 1);
  if (t.modes % factor != 0 || (t.levels > 1 && t.modes / factor < 4)) {
    std::ostringstream os;
    os << "modes = " << t.modes << " does not support a " << t.levels
       << "-level ladder (needs a multiple of " << factor << " with >= 4 coarsest modes)";
    fail(ErrorCode::config, os.str());
  }
  std::vector<int> ladder;
  for (int level = t.levels - 1; level >= 0; --level) ladder.push_back(t.modes >> level);
  return ladder;
}

double extrapolate_to_zero(std::span<const double> h, std::span<const double> values) {
  if (h.size() != values.size() || h.empty())
    fail(ErrorCode::config, "extrapolation needs matching, non-empty samples");
  std::vector<double> p(values.begin(), values.end());
  const std::size_t n = p.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
  return p[0];
}

double extrapolate_in_modes(std::span<const int> modes, std::span<const double> values) {
  std::vector<double> h;
  h.reserve(modes.size());
  for (int n : modes) {
    if (n < 1) fail(ErrorCode::config, "truncation order must be >= 1");
    h.push_back(1.0 / n);
  }
  return extrapolate_to_zero(h, values);
}

double richardson(double lam_h, double lam_h2, double order) {
  if (!(order > 0.0)) fail(ErrorCode::config, "Richardson order must be positive");
  const double f = std::pow(2.0, order);
  return (f * lam_h2 - lam_h) / (f - 1.0);
}

}  // namespace stripwin
