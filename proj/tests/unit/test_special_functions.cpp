#include <doctest.h>

#include <cmath>
#include <numbers>

#include "besselid/special_functions.hpp"
#include "oracles.hpp"

using namespace besselid;

TEST_CASE("gamma") {
  CHECK(besselid::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(besselid::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-15));
  CHECK(besselid::gamma(0.5) == doctest::Approx(1.77245385090552).epsilon(1e-14));
  for (double x = -7.75; x < 30.0; x += 0.37) {
    if (std::abs(x - std::round(x)) < 1e-9 && x <= 0) {
      continue;
    }
    CHECK(oracle::relative_error(besselid::gamma(x), std::tgamma(x)) < 1e-13);
  }
  CHECK_THROWS_AS(besselid::gamma(0.0), PoleError);
  CHECK_THROWS_AS(besselid::gamma(-3.0), PoleError);
}

TEST_CASE("reciprocal_gamma") {
  CHECK(reciprocal_gamma(0.0) == 0.0);
  CHECK(reciprocal_gamma(-3.0) == 0.0);
  CHECK(reciprocal_gamma(2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(reciprocal_gamma(-2.5) == doctest::Approx(1.0 / std::tgamma(-2.5)).epsilon(1e-13));
}

TEST_CASE("pochhammer and generalized binomial") {
  CHECK(pochhammer(3.7, 0) == 1.0);
  CHECK(pochhammer(1.0, 4) == 24.0);
  CHECK(pochhammer(0.5, 2) == 0.75);
  CHECK(pochhammer(-3.0, 5) == 0.0);
  CHECK(generalized_binomial(5.0, 2) == 10.0);
  CHECK(generalized_binomial(1.0, 2) == 0.0);
  CHECK(generalized_binomial(-0.5, 1) == -0.5);
  CHECK(generalized_binomial(-0.5, 3) == doctest::Approx(-0.3125).epsilon(1e-15));
}

TEST_CASE("order snaps to nearby negative integers") {
  CHECK(Order(-2.0).negative_integer() == 2);
  CHECK(Order(-2.0 + 1e-14).is_negative_integer());
  CHECK_FALSE(Order(-2.0 + 1e-6).is_negative_integer());
  CHECK_FALSE(Order(0.0).is_negative_integer());
  CHECK(Order(3.0).is_integer());
}

TEST_CASE("laguerre examples") {
  CHECK(laguerre(0, 2.3, 7.1) == 1.0);
  CHECK(laguerre(1, 2.0, 3.0) == doctest::Approx(0.0));
  CHECK(std::abs(laguerre(2, -1.0, 2.0)) < 1e-15);
  CHECK(laguerre(2, -1.0, 3.0) == doctest::Approx(-3.0 + 4.5).epsilon(1e-15));
}

TEST_CASE("laguerre against the exact rational sum") {
  for (double alpha : {-6.0, -3.0, -1.0, -0.5, 0.0, 0.25, 2.0, 7.5}) {
    for (double x : {0.0, 0.125, 1.5, 4.0, 11.0, 30.0}) {
      for (unsigned m : {0u, 1u, 2u, 5u, 13u, 30u, 31u, 45u, 64u}) {
        const auto exact = oracle::laguerre_exact(m, alpha, x);
        // Conditioning: the same sum with every term made positive.
        const double bound = oracle::laguerre(m, alpha + 0.0, -x);
        const double want = static_cast<double>(exact.convert_to<oracle::Real>());
        const double got = laguerre(m, alpha, x);
        const double scale = std::max({std::abs(want), std::abs(bound), 1.0});
        INFO("m=" << m << " alpha=" << alpha << " x=" << x);
        CHECK(std::abs(got - want) <= 1e-13 * scale);
      }
    }
  }
}

TEST_CASE("explicit sum and recurrence agree on their overlap") {
  for (double alpha : {-4.0, -0.5, 1.0, 3.3}) {
    for (double x : {0.3, 2.0, 9.0}) {
      for (unsigned m = 0; m <= kLaguerreExplicitMaxDegree; ++m) {
        const double a = laguerre_explicit(m, alpha, x).value();
        const double b = laguerre_recurrence(m, alpha, x).value();
        CHECK(std::abs(a - b) <= 1e-14 * std::max({1.0, std::abs(a), oracle::laguerre(m, alpha, -x)}));
      }
    }
  }
  const auto seq = laguerre_sequence(40, -2.0, 1.7);
  REQUIRE(seq.size() == 41);
  CHECK(seq[17].value() == doctest::Approx(laguerre(17, -2.0, 1.7)).epsilon(1e-14));
}

TEST_CASE("bessel examples") {
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(bessel_i(0.0, 0.0) == 1.0);
  CHECK(bessel_j(2.5, 0.0) == 0.0);
  CHECK(bessel_j(1.0, 2.0) == doctest::Approx(0.576724807756873).epsilon(1e-14));
  CHECK(bessel_i(1.0, 1.0) == doctest::Approx(0.565159103992485).epsilon(1e-14));
  for (double x : {0.3, 1.0, 4.0, 17.0}) {
    CHECK(bessel_j(-3.0, x) == -bessel_j(3.0, x));
    CHECK(bessel_i(-2.0, x) == bessel_i(2.0, x));
  }
  CHECK_THROWS_AS(bessel_j(0.5, -1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j(-0.5, 0.0), std::domain_error);
}

TEST_CASE("bessel functions match the 50-digit series") {
  double worst_j = 0.0;
  double worst_i = 0.0;
  for (double alpha = -4.0; alpha <= 6.0; alpha += 0.25) {
    for (double x = 0.05; x <= 25.0; x += 0.3112) {
      worst_j = std::max(worst_j, oracle::relative_error(bessel_j(alpha, x), oracle::bessel_j(alpha, x)));
      worst_i = std::max(worst_i, oracle::relative_error(bessel_i(alpha, x), oracle::bessel_i(alpha, x)));
    }
    worst_j = std::max(worst_j, oracle::relative_error(bessel_j(alpha, 25.0), oracle::bessel_j(alpha, 25.0)));
  }
  CHECK(worst_j <= 1e-11);
  CHECK(worst_i <= 1e-11);
}

TEST_CASE("plain summation loses digits the compensated one keeps") {
  const double want = oracle::bessel_j(0.0, 25.0);
  const double plain = oracle::relative_error(bessel_j(0.0, 25.0, Summation::plain), want);
  const double compensated = oracle::relative_error(bessel_j(0.0, 25.0, Summation::compensated), want);
  CHECK(compensated <= 1e-14);
  CHECK(plain > compensated);
}

TEST_CASE("scaled bessel functions") {
  for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
    CHECK(scaled_bessel_j(alpha, 0.0) ==
          doctest::Approx(std::pow(2.0, -alpha) / std::tgamma(alpha + 1)).epsilon(1e-14));
    CHECK(scaled_bessel_i(alpha, 0.0) ==
          doctest::Approx(std::pow(2.0, -alpha) / std::tgamma(alpha + 1)).epsilon(1e-14));
  }
  CHECK(scaled_bessel_j(0.0, 3.0) == doctest::Approx(bessel_j(0.0, 3.0)).epsilon(1e-15));
  CHECK(scaled_bessel_j(1.0, 2.0) == doctest::Approx(0.288362403878437).epsilon(1e-14));
  CHECK(scaled_bessel_j(-2.0, 0.0) == 0.0);
  for (double x : {0.5, 3.0, 12.0}) {
    CHECK(scaled_bessel_j(-1.5, x) ==
          doctest::Approx(std::pow(x, 1.5) * oracle::bessel_j(-1.5, x)).epsilon(1e-12));
  }
}
