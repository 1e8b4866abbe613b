#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "stripwin/coefficients.hpp"
#include "stripwin/errors.hpp"

using namespace stripwin;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

}  // namespace

TEST_CASE("mu from alpha") {
  CHECK(mu_from_alpha(0.0) == 0.0);
  CHECK(mu_from_alpha(2.0 / std::sqrt(pi)) == doctest::Approx(1.0));
  CHECK(mu_from_alpha(-1.0) == doctest::Approx(pi / 4.0));
}

TEST_CASE("semi-analytic mu agrees with direct quadrature of the gradient") {
  for (int n : {1, 2}) {
    const auto f = threshold_resonance(n, 48);
    const double mu = mu_from_integral(f);
    const double quad = testing::mu_quadrature(f, 64, 256);
    CHECK(mu > 0.0);
    CHECK(std::abs(mu / quad - 1.0) < 1e-4);
  }
}

TEST_CASE("mu integral preconditions") {
  const auto bound = bound_state_field(0, 1.0, 32);
  CHECK(code_of([&] { mu_from_integral(bound); }) == ErrorCode::precondition);
  auto f = threshold_resonance(1, 32);
  f.c1 = 2.0;
  CHECK(code_of([&] { mu_from_integral(f); }) == ErrorCode::precondition);
  CHECK(code_of([] { mu_report(0); }) == ErrorCode::config);
}

TEST_CASE("default eps grid") {
  const auto g = default_eps_grid();
  REQUIRE(g.size() == 10);
  CHECK(g.front() == doctest::Approx(0.02));
  CHECK(g.back() == doctest::Approx(0.20));
}

TEST_CASE("law fits validate their grids") {
  CHECK(code_of([] { verify_decay_law(1, 2.273, 0.757, {0.1}); }) == ErrorCode::fit_quality);
  CHECK(code_of([] { verify_quadratic_law(1, 2.273, 0.757, {0.1}); }) == ErrorCode::fit_quality);
  CHECK(code_of([] { verify_decay_law(1, 2.273, 0.757, {0.1, 0.05}); }) == ErrorCode::config);
  CHECK(code_of([] { verify_decay_law(1, 2.273, 0.757, {0.1, 0.3}); }) == ErrorCode::config);
  CHECK(code_of([] { verify_popov({0.2, 0.4}); }) == ErrorCode::config);
  CHECK(code_of([] { verify_popov({0.6, 0.4}); }) == ErrorCode::config);
  CHECK(code_of([] { verify_eigenfunction_convergence(1, {0.1}); }) == ErrorCode::fit_quality);
}

TEST_CASE("decay law on a short grid") {
  LawOptions o;
  o.truncation = {64, 3};
  const auto rep = verify_decay_law(1, 2.2729980, 0.7573952, {0.05, 0.1, 0.15}, o);
  CHECK(rep.passed());
  CHECK(rep.coefficient("mu") == doctest::Approx(0.7574).epsilon(0.01));
  CHECK(rep.sample.size() == 3);
  CHECK_THROWS_AS(rep.coefficient("nope"), Error);
}

TEST_CASE("Popov ratio approaches one") {
  const auto rep = verify_popov({0.3, 0.2});
  REQUIRE(rep.sample.size() == 2);
  for (const auto& s : rep.sample) CHECK(std::abs(s.observed - 1.0) < 0.05);
}
