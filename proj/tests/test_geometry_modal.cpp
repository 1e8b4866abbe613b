#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "stripwin/errors.hpp"
#include "stripwin/geometry.hpp"
#include "stripwin/modal.hpp"

using namespace stripwin;
using testing::overlap_quadrature;
using testing::p_term_complex;

namespace {
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}
}  // namespace

TEST_CASE("normalization maps to d = pi") {
  const auto n = normalize({1.0, 2.0});
  CHECK(n.a == doctest::Approx(2.0 * pi));
  CHECK(n.scale == doctest::Approx(pi * pi));
  const auto g = denormalize(n.a, 1.0);
  CHECK(g.a == doctest::Approx(2.0));
  CHECK(code_of([] { normalize({0.0, 1.0}); }) == ErrorCode::config);
  CHECK(code_of([] { normalize({1.0, -0.1}); }) == ErrorCode::config);
}

TEST_CASE("parity helpers") {
  CHECK(parity_of_index(0) == Parity::even);
  CHECK(parity_of_index(3) == Parity::odd);
  CHECK(parse_parity("odd") == Parity::odd);
  CHECK(code_of([] { parse_parity("both"); }) == ErrorCode::config);
  const auto p = spectral_point_from_decay(1, 2.0, Parity::odd, 0.6);
  CHECK(p.lambda == doctest::Approx(0.64));
  CHECK(p.eps == p.lambda);
}

TEST_CASE("transverse bases satisfy their boundary conditions") {
  for (int k = 1; k <= 12; ++k) {
    CHECK(std::abs(chi(k, pi)) < 1e-14);
    CHECK(std::abs(chi(k, 0.0)) < 1e-13);
    CHECK(std::abs(phi(k, pi)) < 1e-14);
    CHECK(std::abs(phi_derivative(k, 0.0)) < 1e-13);
    CHECK(std::abs(phi(k, 0.0)) == doctest::Approx(std::sqrt(2.0 / pi)));
  }
  // physical width: chi scales with sqrt(2/d)
  CHECK(chi(1, 0.25, 1.0) == doctest::Approx(std::sqrt(2.0) * std::sin(pi * 0.75)));
  CHECK(code_of([] { chi(0, 1.0); }) == ErrorCode::domain);
  CHECK(code_of([] { phi(1, 3.5); }) == ErrorCode::domain);
}

TEST_CASE("the (2j - 1) window basis violates the Neumann condition") {
  // Candidate sin((2j - 1)(pi - x2)) has derivative (2j - 1) at x2 = 0; the
  // half-integer form used by phi() has derivative 0 there.
  for (int j = 1; j <= 6; ++j) {
    const double m = 2.0 * j - 1.0;
    const double candidate = -m * std::cos(m * pi);
    CHECK(candidate == doctest::Approx(m));
    CHECK(std::abs(std::sin(m * pi)) < 1e-13);  // Dirichlet at x2 = d holds for both
    const double h = 1e-6;
    const double fd = (phi(j, h) - phi(j, 0.0)) / h;
    CHECK(std::abs(fd) < 1e-5 * m * m);
  }
}

TEST_CASE("bases are orthonormal") {
  const auto g = testing::gauss(64, 0.0, pi);
  double worst = 0.0;
  for (int j = 1; j <= 8; ++j) {
    for (int k = 1; k <= 8; ++k) {
      double cc = 0.0, pp = 0.0;
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        cc += g.w[i] * chi(j, g.x[i]) * chi(k, g.x[i]);
        pp += g.w[i] * phi(j, g.x[i]) * phi(k, g.x[i]);
      }
      const double delta = j == k ? 1.0 : 0.0;
      worst = std::max({worst, std::abs(cc - delta), std::abs(pp - delta)});
    }
  }
  CHECK(worst < 1e-10);
  CHECK(chi(1, pi / 2) == doctest::Approx(std::sqrt(2.0 / pi)));
}

TEST_CASE("overlap closed form matches quadrature") {
  CHECK(overlap(1, 1) == doctest::Approx(8.0 / (3.0 * pi)).epsilon(1e-14));
  CHECK(overlap(2, 1) == doctest::Approx(-16.0 / (15.0 * pi)).epsilon(1e-14));
  double worst = 0.0;
  for (int j = 1; j <= 10; ++j)
    for (int k = 1; k <= 10; ++k)
      worst = std::max(worst, std::abs(overlap(j, k) - overlap_quadrature(j, k)));
  CHECK(worst < 1e-10);
}

TEST_CASE("overlap completeness partial sums") {
  for (int k = 1; k <= 6; ++k) {
    double col = 0.0, row = 0.0;
    for (int j = 1; j <= 4000; ++j) {
      col += overlap(j, k) * overlap(j, k);
      row += overlap(k, j) * overlap(k, j);
    }
    CHECK(col > 0.99);
    CHECK(col <= 1.0 + 1e-12);
    CHECK(row > 0.99);
    CHECK(row <= 1.0 + 1e-12);
  }
  const OverlapTable t(5, 7);
  CHECK(t.rows() == 5);
  CHECK(t(5, 7) == overlap(5, 7));
}

TEST_CASE("longitudinal exponents") {
  CHECK(q_exponent(1, 1.0) == 0.0);
  CHECK(q_exponent(2, 1.0) == doctest::Approx(std::sqrt(3.0)));
  CHECK(code_of([] { q_exponent(1, 1.5); }) == ErrorCode::domain);
  const auto w = window_exponent(1, 1.0);
  CHECK(w.kind == LongitudinalExponent::Kind::oscillatory);
  CHECK(w.value == doctest::Approx(std::sqrt(3.0) / 2.0));
  CHECK(window_exponent(2, 1.0).kind == LongitudinalExponent::Kind::decaying);
}

TEST_CASE("p_term agrees with complex arithmetic") {
  for (double eps : {0.3, 0.6, 0.9, 1.0}) {
    for (double a : {0.4, 1.0, 2.5}) {
      for (int k = 1; k <= 5; ++k) {
        for (bool even : {true, false}) {
          const double want = p_term_complex(k, eps, a, even);
          const double got = p_term(k, eps, a, even ? Parity::even : Parity::odd);
          CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
      }
    }
  }
  // p = 0 in the odd sector: coth(p a) p -> 1/a
  CHECK(p_term(1, 0.25, 2.0, Parity::odd) == doctest::Approx(0.5));
  const double b = std::sqrt(3.0) / 2.0;
  CHECK(p_term(1, 1.0, 1.0, Parity::even) == doctest::Approx(-b * std::tan(b)));
  CHECK(p_term(1, 1.0, 1.0, Parity::odd) == doctest::Approx(b / std::tan(b)));
  CHECK(p_term(2, 1.0, 40.0, Parity::even) == doctest::Approx(std::sqrt(5.0) / 2.0));
  CHECK(q_exponent(1, 0.75) == doctest::Approx(0.5));
  CHECK(code_of([] { p_term(1, 1.0, 0.0, Parity::even); }) == ErrorCode::config);
}

TEST_CASE("p_term refuses tan/cot poles") {
  const double beta = std::sqrt(0.75);
  const double a_even = (pi / 2.0) / beta;
  CHECK(code_of([&] { p_term(1, 1.0, a_even, Parity::even); }) == ErrorCode::pole);
  const double a_odd = pi / beta;
  CHECK(code_of([&] { p_term(1, 1.0, a_odd, Parity::odd); }) == ErrorCode::pole);
}
