#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "stripwin/errors.hpp"
#include "stripwin/modal.hpp"
#include "stripwin/resonance.hpp"

using namespace stripwin;

namespace {

const ResonanceField& field1() {
  static const ResonanceField f = threshold_resonance(1, 128);
  return f;
}

const ResonanceField& field2() {
  static const ResonanceField f = threshold_resonance(2, 128);
  return f;
}

}  // namespace

TEST_CASE("far-field coefficients are the overlap transform of the trace") {
  for (const auto* f : {&field1(), &field2()}) {
    const OverlapTable table(f->modes);
    const Eigen::VectorXd c = table.matrix() * f->b;
    CHECK((c - f->c).norm() < 1e-12 * f->c.norm());
    CHECK(f->c1 == 1.0);
    CHECK(f->c(0) == doctest::Approx(1.0));
    CHECK(f->is_threshold());
    CHECK(f->kernel_residual < 1e-10);
  }
}

TEST_CASE("normalization is idempotent") {
  const auto g = normalized(field1());
  CHECK((g.b - field1().b).norm() < 1e-14);
  CHECK((g.c - field1().c).norm() < 1e-14);
  auto scaled = field1();
  scaled.b *= -3.0;
  scaled.c *= -3.0;
  scaled.b1_scaled *= -3.0;
  scaled.c1 = -3.0;
  const auto back = normalized(scaled);
  CHECK((back.b - field1().b).norm() < 1e-12);
  CHECK(back.b1_scaled == doctest::Approx(field1().b1_scaled));
}

TEST_CASE("boundary conditions") {
  const auto& f = field1();
  for (double x1 : {0.3, 1.5, f.a_ref + 0.5, f.a_ref + 3.0})
    CHECK(std::abs(eval_field(f, x1, pi).value) < 1e-12);
  // one-sided second-order difference of d psi / d x2 on the window
  const double h = 1e-4;
  for (double x1 : {0.0, 0.7, 1.4}) {
    const double d0 = (-3.0 * eval_field(f, x1, 0.0).value + 4.0 * eval_field(f, x1, h).value -
                       eval_field(f, x1, 2.0 * h).value) /
                      (2.0 * h);
    CHECK(std::abs(d0) < 1e-5);
  }
}

TEST_CASE("threshold far field tends to chi_1 at the rate sqrt 3") {
  const auto& f = field1();
  const double x2 = 1.0;
  const double c1 = chi(1, x2);
  // far enough out that chi_3 (rate sqrt 8) is negligible
  const double t8 = eval_field(f, f.a_ref + 8.0, x2).value - c1;
  const double t9 = eval_field(f, f.a_ref + 9.0, x2).value - c1;
  CHECK(t8 / t9 == doctest::Approx(std::exp(std::sqrt(3.0))).epsilon(1e-5));
  // far out only chi_1 remains
  CHECK(eval_field(f, f.a_ref + 30.0, x2).value == doctest::Approx(c1).epsilon(1e-12));
}

TEST_CASE("parity extension") {
  for (const auto* f : {&field1(), &field2()}) {
    const double sign = f->parity == Parity::even ? 1.0 : -1.0;
    for (double x1 : {0.4, 1.9, f->a_ref + 1.0}) {
      const double x2 = 0.8;
      CHECK(eval_field(*f, -x1, x2).value ==
            doctest::Approx(sign * eval_field(*f, x1, x2).value).epsilon(1e-13));
    }
  }
  CHECK(field1().parity == Parity::odd);
  CHECK(field2().parity == Parity::even);
  CHECK(std::abs(eval_field(field1(), 0.0, 0.5).value) < 1e-14);
}

TEST_CASE("inside and outside series agree on the interface away from the corner") {
  const auto f = threshold_resonance(1, 256);
  const double r_min = accuracy_radius(256);
  double diff = 0.0, scale = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x2 = r_min + (pi - r_min) * i / 200.0;
    const double in = eval_inside(f, f.a_ref, x2);
    const double out = eval_outside(f, f.a_ref, x2);
    diff = std::max(diff, std::abs(in - out));
    scale = std::max(scale, std::abs(out));
  }
  CHECK(diff / scale < 5e-3);
}

TEST_CASE("bound state decays at its rate m") {
  const auto f = bound_state_field(0, 1.0, 64);
  CHECK(!f.is_threshold());
  CHECK(f.eps < 1.0);
  const double m = std::sqrt(1.0 - f.eps);
  const double x2 = 1.0;
  const double r = eval_field(f, f.a_ref + 12.0, x2).value / eval_field(f, f.a_ref + 13.0, x2).value;
  CHECK(r == doctest::Approx(std::exp(m)).epsilon(1e-8));
  CHECK_THROWS_AS(bound_state_field(1, 1.0, 64), Error);
}

TEST_CASE("accuracy radius and warnings") {
  CHECK(accuracy_radius(512) == doctest::Approx(0.02 * pi));
  CHECK(accuracy_radius(128) == doctest::Approx(0.08 * pi));
  const auto& f = field1();
  CHECK(eval_field(f, f.a_ref + 0.01, 0.01).accuracy_warning);
  CHECK(!eval_field(f, 0.5, 1.0).accuracy_warning);
  const auto fit = edge_coefficient(f, corner_radii());
  CHECK(fit.accuracy_warning);
}

TEST_CASE("corner radii") {
  const auto r = corner_radii();
  REQUIRE(r.size() == 12);
  CHECK(r.front() == doctest::Approx(0.02 * pi));
  CHECK(r.back() == doctest::Approx(0.25 * pi));
  CHECK_THROWS_AS(corner_radii(0.1, 0.1, 5), Error);
  CHECK_THROWS_AS(edge_coefficient(field1(), corner_radii(0.1, 0.2, 5)), Error);
  CHECK_THROWS_AS(edge_coefficient(field1(), corner_radii(0.01, 0.2, 10)), Error);
}

TEST_CASE("corner coefficient is positive and insensitive to the radius window") {
  const auto f = threshold_resonance(1, 256);
  const auto wide = edge_coefficient(f, corner_radii(0.04, 0.25, 12));
  const auto narrow = edge_coefficient(f, corner_radii(0.04, 0.15, 12));
  const auto outer = edge_coefficient(f, corner_radii(0.08, 0.25, 12));
  CHECK(wide.alpha > 0.0);
  CHECK(wide.relative_residual < 0.05);
  CHECK(std::abs(narrow.alpha / wide.alpha - 1.0) < 0.02);
  CHECK(std::abs(outer.alpha / wide.alpha - 1.0) < 0.02);
  // the ray diagnostic sees the same coefficient
  const auto ray = edge_coefficient(f, corner_radii(0.04, 0.25, 12), EdgeMethod::ray, 0.2);
  CHECK(std::abs(ray.alpha / wide.alpha - 1.0) < 0.05);
}
