#include <cmath>

#include "doctest.h"
#include "stripwin/errors.hpp"
#include "stripwin/spectrum.hpp"
#include "stripwin/thresholds.hpp"

using namespace stripwin;

TEST_CASE("brackets") {
  const auto [lo, hi] = threshold_bracket(2);
  CHECK(lo == doctest::Approx(2.0 * pi / std::sqrt(3.0)));
  CHECK(hi == doctest::Approx(3.0 * pi / std::sqrt(3.0)));
}

TEST_CASE("a_0 is the trivial record") {
  const auto r = find_threshold(0, {64, 3});
  CHECK(r.a_n == 0.0);
  CHECK(r.ladder.empty());
  CHECK(r.parity == Parity::even);
}

TEST_CASE("first thresholds lie in their brackets and increase") {
  const auto table = threshold_table(3, {64, 3});
  REQUIRE(table.size() == 4);
  for (int n = 1; n <= 3; ++n) {
    const auto& r = table[n];
    CHECK(r.parity == parity_of_index(static_cast<unsigned>(n)));
    CHECK(r.a_n > r.bracket_lo);
    CHECK(r.a_n < r.bracket_hi);
    CHECK(r.residual < 1e-10);
    CHECK(r.a_n > table[n - 1].a_n);
    // truncated thresholds approach the limit from below
    CHECK(r.level_values.back() < r.a_n);
  }
  CHECK(table[1].a_n == doctest::Approx(2.2729980).epsilon(1e-6));
  CHECK(table[2].a_n == doctest::Approx(4.0840066).epsilon(1e-6));
}

TEST_CASE("doubling check passes at 128 modes") {
  ThresholdOptions o;
  o.check_doubling = true;
  CHECK_NOTHROW(find_threshold(1, {128, 3}, o));
}

TEST_CASE("a root sitting on the bracket end is a bracket anomaly") {
  // one-mode truncation: the odd threshold is exactly pi / sqrt 3, the left
  // bracket end, so the open bracket holds no sign change
  const MatchingSystem sys(Parity::odd, 1);
  try {
    raw_threshold(sys, 1);
    FAIL("expected a bracket anomaly");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::bracket_anomaly);
  }
}

TEST_CASE("an eigenvalue emerges at the threshold") {
  const auto r = find_threshold(1, {64, 3});
  const auto below = full_spectrum(r.a_n - 0.05, {64, 3});
  const auto above = full_spectrum(r.a_n + 0.05, {64, 3});
  CHECK(above.points.size() == below.points.size() + 1);
  CHECK(above.points.back().parity == Parity::odd);
}
