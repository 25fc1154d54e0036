#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <numbers>

#include "besselid/quadrature.hpp"
#include "besselid/special_functions.hpp"

using namespace besselid;

TEST_CASE("tanh_sinh examples") {
  const auto a = tanh_sinh([](double r) { return 1.0 / std::sqrt(r); }, 0.0, 1.0, 1e-13);
  CHECK(a.converged);
  CHECK(a.value == doctest::Approx(2.0).epsilon(1e-12));

  const GapIntegrand arcsine = [](double, double left, double right) {
    return 1.0 / std::sqrt(left * right);
  };
  const auto b = tanh_sinh(arcsine, 0.0, 1.0, 1e-13);
  CHECK(b.converged);
  CHECK(b.value == doctest::Approx(std::numbers::pi).epsilon(1e-12));

  const auto c = tanh_sinh([](double r) { return 4.0 / (1.0 + r * r); }, 0.0, 1.0, 1e-14);
  CHECK(c.converged);
  CHECK(c.value == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(c.evaluations > 0);
}

TEST_CASE("gauss_legendre is exact for polynomials") {
  const auto& rule = gauss_legendre_rule(8);
  double total = 0.0;
  for (double w : rule.weights) {
    total += w;
  }
  CHECK(total == doctest::Approx(2.0).epsilon(1e-15));
  const double v = gauss_legendre([](double t) { return std::pow(t, 15) + 3 * std::pow(t, 14); }, -1.0, 2.0, 8);
  const double want = (std::pow(2.0, 16) - 1.0) / 16.0 + 3.0 * (std::pow(2.0, 15) + 1.0) / 15.0;
  CHECK(v == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("integrate_identity_kernel examples") {
  const auto one = integrate_identity_kernel({0.0, 0.0}, [](double, double) { return 1.0; }, 1e-13);
  CHECK(one.converged);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-14));

  const auto arcsine = integrate_identity_kernel(
      {-0.5, -0.5}, [](double r, double s) { return 1.0 / std::sqrt(r * s); }, 1e-13);
  CHECK(arcsine.value == doctest::Approx(std::numbers::pi).epsilon(1e-12));

  // (y/2) int (1-r)^{-1/2} J_0(sqrt(r) x) J_1(sqrt(1-r) y) dr = J_0(x) - J_0(sqrt(x^2+y^2))
  const auto sonine = integrate_identity_kernel(
      {0.0, -0.5},
      [](double r, double s) {
        return std::pow(s, -0.5) * bessel_j(0.0, std::sqrt(r) * 3.0) * bessel_j(1.0, std::sqrt(s) * 4.0) * 2.0;
      },
      1e-13);
  CHECK(sonine.converged);
  CHECK(sonine.value == doctest::Approx(bessel_j(0.0, 3.0) - bessel_j(0.0, 5.0)).epsilon(1e-11));
}

TEST_CASE("integrate_weighted reproduces the Beta family") {
  double worst = 0.0;
  for (double a : {-0.9, -0.75, -0.5, -0.25, 0.0, 0.5, 1.0, 2.5, 6.0}) {
    for (double b : {-0.9, -0.5, 0.0, 0.3, 1.0, 4.0}) {
      const auto result = integrate_weighted({a, b}, [](double, double) { return 1.0; }, 1e-14, 1e-14);
      CHECK(result.converged);
      worst = std::max(worst, std::abs(result.value / boost::math::beta(a + 1, b + 1) - 1.0));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("integrate_weighted with a smooth factor") {
  // int r^{-1/2} (1-r)^{1/2} e^r dr = B(1/2, 3/2) 1F1(1/2; 2; 1)
  const auto result = integrate_weighted({-0.5, 0.5}, [](double r, double) { return std::exp(r); }, 1e-14, 1e-14);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 40; ++k) {
    term *= (0.5 + k) / ((2.0 + k) * (k + 1.0));
    sum += term;
  }
  CHECK(result.value == doctest::Approx(boost::math::beta(0.5, 1.5) * sum).epsilon(1e-13));
}

TEST_CASE("non-integrable exponents are rejected") {
  CHECK_THROWS(integrate_weighted({-1.0, 0.0}, [](double, double) { return 1.0; }, 1e-12));
  CHECK_THROWS(integrate_identity_kernel({0.0, -1.5}, [](double, double) { return 1.0; }, 1e-12));
}
