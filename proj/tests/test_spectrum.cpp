#include <cmath>

#include "doctest.h"
#include "stripwin/errors.hpp"
#include "stripwin/spectrum.hpp"

using namespace stripwin;

TEST_CASE("scan grid is sorted, inside (1/4, 1) and dense near the threshold") {
  const auto g = scan_grid({});
  REQUIRE(g.size() > 2000);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK(g.front() > 0.25);
  CHECK(g.back() < 1.0);
  CHECK(1.0 - g.back() < 1e-11);
}

TEST_CASE("no window, no eigenvalues") {
  const auto s = full_spectrum(0.0, {64, 3});
  CHECK(s.points.empty());
}

TEST_CASE("a = 1 carries exactly one even eigenvalue") {
  const auto s = full_spectrum(1.0, {128, 3});
  REQUIRE(s.points.size() == 1);
  CHECK(s.points[0].parity == Parity::even);
  CHECK(s.points[0].index == 0);
  // regression value (extrapolated mode matching, agrees with the FD oracle)
  CHECK(s.points[0].lambda == doctest::Approx(0.858835).epsilon(2e-6));
  CHECK(s.points[0].m * s.points[0].m + s.points[0].lambda == doctest::Approx(1.0));
}

TEST_CASE("parities alternate and eigenvalues lie in (1/4, 1)") {
  const auto s = full_spectrum(6.0, {64, 3});
  REQUIRE(s.points.size() == 4);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    CHECK(s.points[i].index == static_cast<int>(i));
    CHECK(s.points[i].parity == parity_of_index(static_cast<unsigned>(i)));
    CHECK(s.points[i].lambda > 0.25);
    CHECK(s.points[i].lambda < 1.0);
    if (i > 0) CHECK(s.points[i].lambda > s.points[i - 1].lambda);
  }
}

TEST_CASE("eigenvalues decrease with the half-width") {
  const auto curve = eigenvalue_curve(0, {0.5, 1.0, 1.5, 2.0, 3.0}, {64, 3});
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].second < curve[i - 1].second);
}

TEST_CASE("missing branch is a curve gap") {
  CHECK_THROWS_AS(eigenvalue(1, 1.0, {64, 3}), Error);
  try {
    eigenvalue(1, 1.0, {64, 3});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::curve_gap);
  }
}

TEST_CASE("extrapolated eigenvalues are stable under mode doubling") {
  const auto p64 = eigenvalue(0, 2.0, {64, 3});
  const auto p128 = eigenvalue(0, 2.0, {128, 3});
  CHECK(std::abs(p64.lambda - p128.lambda) < 1e-6);
  const auto odd64 = eigenvalue(1, 2.5, {64, 3});
  const auto odd128 = eigenvalue(1, 2.5, {128, 3});
  CHECK(odd128.parity == Parity::odd);
  CHECK(std::abs(odd64.lambda - odd128.lambda) < 1e-6);
}

TEST_CASE("raw roots of one level are verified singular points") {
  const MatchingSystem sys(Parity::even, 32);
  const auto roots = sector_roots(sys, 3.0, {});
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].singular_ratio < 1e-7);
}
