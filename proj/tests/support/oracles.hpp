#pragma once

// Reference values computed independently of the library: 50-digit series
// for Bessel functions, exact rationals for Laguerre polynomials.

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;
using Rational = boost::multiprecision::cpp_rational;

// sum_k s^k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)), s = -1 for J and +1 for I.
inline Real bessel_series(Real nu, Real x, int s) {
  if (nu < 0 && nu == boost::multiprecision::round(nu)) {
    const Real n = -nu;
    const Real value = bessel_series(n, x, s);
    const bool odd = static_cast<long>(n.convert_to<double>()) % 2 != 0;
    return (s < 0 && odd) ? Real(-value) : value;
  }
  const Real half = x / 2;
  const Real q = half * half;
  Real term = boost::multiprecision::pow(half, nu) / boost::math::tgamma(nu + 1);
  Real sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= (s < 0 ? -q : q) / (Real(k) * (k + nu));
    sum += term;
    if (k > 5 && abs(term) < abs(sum) * Real("1e-45") && q < Real(k) * (k + nu)) {
      break;
    }
  }
  return sum;
}

inline double bessel_j(double nu, double x) { return bessel_series(nu, x, -1).convert_to<double>(); }
inline double bessel_i(double nu, double x) { return bessel_series(nu, x, 1).convert_to<double>(); }

// L_m^a(x) = sum_i (-1)^i C(m+a, m-i) x^i / i!, exactly for the binary values of a and x.
inline Rational laguerre_exact(unsigned m, double alpha, double x) {
  const Rational a(alpha);
  const Rational xr(x);
  Rational sum = 0;
  Rational power = 1;  // x^i / i!
  for (unsigned i = 0; i <= m; ++i) {
    if (i > 0) {
      power *= xr / i;
    }
    Rational binomial = 1;  // C(m+a, m-i) = prod_{j=1}^{m-i} (a+i+j)/j
    for (unsigned j = 1; j <= m - i; ++j) {
      binomial *= (a + i + j) / j;
    }
    sum += (i % 2 == 0 ? 1 : -1) * binomial * power;
  }
  return sum;
}

inline double laguerre(unsigned m, double alpha, double x) {
  return static_cast<double>(laguerre_exact(m, alpha, x).convert_to<Real>());
}

// k-th derivative of f at t by a central difference in 50-digit arithmetic;
// h = 1e-8 leaves a truncation error near 1e-16 relative for k <= 4.
template <class F>
Real central_derivative(F&& f, Real t, unsigned k) {
  const Real h("1e-8");
  Real sum = 0;
  Real binomial = 1;
  for (unsigned i = 0; i <= k; ++i) {
    if (i > 0) {
      binomial = binomial * (k - i + 1) / i;
    }
    const Real offset = (Real(k) / 2 - i) * h;
    sum += (i % 2 == 0 ? 1 : -1) * binomial * f(t + offset);
  }
  return sum / boost::multiprecision::pow(h, k);
}

inline double relative_error(double value, double reference) {
  const double scale = std::abs(reference);
  return scale > 0 ? std::abs(value - reference) / scale : std::abs(value);
}

}  // namespace oracle
