#pragma once

#include <stdexcept>
#include <vector>

#include "besselid/compensated.hpp"
#include "besselid/order.hpp"

namespace besselid {

/// Raised when Gamma is evaluated at (or within kIntegerTolerance of) a
/// non-positive integer.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// How the terms of an ascending series are accumulated.
enum class Summation { plain, compensated };

/// Gamma function by a Lanczos approximation (g = 7, 9 terms) with reflection
/// for x < 1/2. Relative error below 1e-13 on [0.5, 30].
double gamma(double x);

/// 1/Gamma(x); entire, exactly 0 at the non-positive integers.
double reciprocal_gamma(double x);

/// Rising factorial x (x+1) ... (x+m-1) by direct product.
double pochhammer(double x, unsigned m);

/// a (a-1) ... (a-k+1) / k! for real a.
double generalized_binomial(double a, unsigned k);

/// Degree above which laguerre() switches from the explicit sum to the
/// three-term degree recurrence.
inline constexpr unsigned kLaguerreExplicitMaxDegree = 30;

/// L_m^alpha(x) for any real alpha, continued through the negative integers by
///   L_m^alpha(x) = sum_{j=0}^m (-1)^j / j! * binom(m+alpha, m-j) x^j.
double laguerre(unsigned m, Order alpha, double x);
CompensatedReal laguerre_compensated(unsigned m, Order alpha, double x);

/// The explicit sum, at any degree. Exposed so the two evaluation routes can be
/// compared on their overlap.
CompensatedReal laguerre_explicit(unsigned m, Order alpha, double x);
/// The degree recurrence (m+1) L_{m+1} = (2m+1+alpha-x) L_m - (m+alpha) L_{m-1}.
CompensatedReal laguerre_recurrence(unsigned m, Order alpha, double x);

/// L_0^alpha(x), ..., L_M^alpha(x) from one pass of the degree recurrence.
std::vector<CompensatedReal> laguerre_sequence(unsigned max_degree, Order alpha, double x);

/// J_alpha(x) from the ascending series. Negative integer orders use
/// J_{-n} = (-1)^n J_n. Throws std::domain_error for x < 0, and at x = 0 for
/// negative non-integer orders (where J diverges).
double bessel_j(Order alpha, double x, Summation summation = Summation::compensated);

/// I_alpha(x) from the ascending series; I_{-n} = I_n.
double bessel_i(Order alpha, double x, Summation summation = Summation::compensated);

/// x^{-alpha} J_alpha(x), with x^alpha cancelled inside the series. Finite at
/// x = 0, where it equals 2^{-alpha} / Gamma(alpha+1).
double scaled_bessel_j(Order alpha, double x);

/// x^{-alpha} I_alpha(x), likewise.
double scaled_bessel_i(Order alpha, double x);

}  // namespace besselid
