#include "besselid/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace besselid {

Order::Order(double value) : value_(value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("order must be finite");
  }
  const double nearest = std::nearbyint(value);
  if (nearest <= -1.0 && std::abs(value - nearest) <= kIntegerTolerance) {
    value_ = nearest;
    negative_integer_ = static_cast<int>(-nearest);
  }
}

bool Order::is_integer() const {
  return std::abs(value_ - std::nearbyint(value_)) <= kIntegerTolerance;
}

namespace {

constexpr double kPi = std::numbers::pi;

// sin(pi x) with the argument reduced exactly before scaling by pi.
double sin_pi(double x) {
  double r = std::remainder(x, 2.0);  // exact, in [-1, 1]
  if (r > 0.5) {
    r = 1.0 - r;
  } else if (r < -0.5) {
    r = -1.0 - r;
  }
  return std::sin(kPi * r);
}

bool is_nonpositive_integer(double x, double tolerance) {
  const double nearest = std::nearbyint(x);
  return nearest <= 0.0 && std::abs(x - nearest) <= tolerance;
}

// Lanczos g = 7, n = 9; valid for x >= 1/2.
double lanczos_gamma(double x) {
  static constexpr std::array<double, 9> kCoefficients = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double kG = 7.0;
  const double z = x - 1.0;
  double sum = kCoefficients[0];
  for (std::size_t i = 1; i < kCoefficients.size(); ++i) {
    sum += kCoefficients[i] / (z + static_cast<double>(i));
  }
  const double t = z + kG + 0.5;
  // t^(z+1/2) split in two halves so that it does not overflow before e^-t
  // brings it back into range.
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * kPi) * half_power * (std::exp(-t) * half_power) * sum;
}

constexpr double kSeriesStopRatio = 1e-17;
constexpr int kSeriesStopCount = 3;
constexpr int kSeriesMaxTerms = 2000;

// S = sum_{k >= k0} t_k with t_{k0} = 1 and t_k = t_{k-1} * sign q / (k (k+nu)).
// Stops once kSeriesStopCount consecutive terms fall below kSeriesStopRatio |S|
// on the decreasing side of the series.
CompensatedReal ascending_series_compensated(double nu, CompensatedReal q, double sign, int k0) {
  CompensatedReal sum = 1.0;
  CompensatedReal term = 1.0;
  const CompensatedReal signed_q = q * sign;
  int small = 0;
  for (int k = k0 + 1; k < k0 + kSeriesMaxTerms; ++k) {
    CompensatedReal shifted = CompensatedReal(static_cast<double>(k)) + nu;
    shifted *= static_cast<double>(k);
    term = term * signed_q / shifted;
    sum += term;
    const bool decreasing = std::abs(q.hi()) < std::abs(shifted.hi());
    if (decreasing && std::abs(term.hi()) < kSeriesStopRatio * std::abs(sum.hi())) {
      if (++small == kSeriesStopCount) {
        return sum;
      }
    } else {
      small = 0;
    }
  }
  throw std::runtime_error("ascending Bessel series did not converge");
}

double ascending_series_plain(double nu, double q, double sign, int k0) {
  double sum = 1.0;
  double term = 1.0;
  int small = 0;
  for (int k = k0 + 1; k < k0 + kSeriesMaxTerms; ++k) {
    const double shifted = k * (k + nu);
    term *= sign * q / shifted;
    sum += term;
    const bool decreasing = std::abs(q) < std::abs(shifted);
    if (decreasing && std::abs(term) < kSeriesStopRatio * std::abs(sum)) {
      if (++small == kSeriesStopCount) {
        return sum;
      }
    } else {
      small = 0;
    }
  }
  throw std::runtime_error("ascending Bessel series did not converge");
}

CompensatedReal quarter_square(double x) {
  double p, e;
  detail::two_prod(x, x, p, e);
  return CompensatedReal::from_parts(p, e) * 0.25;
}

double series_value(double nu, double x, double sign, int k0, Summation summation) {
  if (summation == Summation::plain) {
    return ascending_series_plain(nu, 0.25 * x * x, sign, k0);
  }
  return ascending_series_compensated(nu, quarter_square(x), sign, k0).value();
}

void check_argument(Order alpha, double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("Bessel argument must be non-negative");
  }
  if (x == 0.0 && alpha.value() < 0.0 && !alpha.is_negative_integer()) {
    throw std::domain_error("Bessel function of negative non-integer order diverges at 0");
  }
}

// x^{-alpha} Z_alpha(x) where sign = -1 selects J and +1 selects I.
double scaled_series(Order alpha, double x, double sign) {
  if (!(x >= 0.0)) {
    throw std::domain_error("Bessel argument must be non-negative");
  }
  if (const auto n = alpha.negative_integer()) {
    // Terms k < n vanish; the series starts at 2^n (sign q)^n / n!.
    const double q = 0.25 * x * x;
    double lead = 1.0;
    for (int i = 1; i <= *n; ++i) {
      lead *= 2.0 * sign * q / i;
    }
    if (lead == 0.0) {
      return 0.0;
    }
    return lead * series_value(-*n, x, sign, *n, Summation::compensated);
  }
  const double a = alpha.value();
  const double lead = std::exp2(-a) * reciprocal_gamma(a + 1.0);
  return lead * series_value(a, x, sign, 0, Summation::compensated);
}

double unscaled_series(Order alpha, double x, double sign, Summation summation) {
  const double a = alpha.value();
  if (x == 0.0) {
    return a == 0.0 ? 1.0 : 0.0;
  }
  const double lead = std::pow(0.5 * x, a) * reciprocal_gamma(a + 1.0);
  if (lead == 0.0) {
    return 0.0;
  }
  return lead * series_value(a, x, sign, 0, summation);
}

}  // namespace

double gamma(double x) {
  if (std::isnan(x)) {
    return x;
  }
  if (is_nonpositive_integer(x, kIntegerTolerance)) {
    throw PoleError("gamma: pole at non-positive integer");
  }
  if (x < 0.5) {
    return kPi / (sin_pi(x) * gamma(1.0 - x));
  }
  if (x > 171.7) {
    return HUGE_VAL;
  }
  return lanczos_gamma(x);
}

double reciprocal_gamma(double x) {
  if (std::isnan(x)) {
    return x;
  }
  if (x <= 0.0 && x == std::nearbyint(x)) {
    return 0.0;
  }
  if (x < 0.5) {
    return sin_pi(x) * gamma(1.0 - x) / kPi;
  }
  if (x > 171.7) {
    return 0.0;
  }
  return 1.0 / lanczos_gamma(x);
}

double pochhammer(double x, unsigned m) {
  double product = 1.0;
  for (unsigned i = 0; i < m; ++i) {
    product *= x + i;
  }
  return product;
}

double generalized_binomial(double a, unsigned k) {
  double result = 1.0;
  for (unsigned i = 0; i < k; ++i) {
    result *= (a - i) / (i + 1);
  }
  return result;
}

CompensatedReal laguerre_explicit(unsigned m, Order alpha, double x) {
  // binomial[k] = binom(m + alpha, k); the upper argument is carried exactly.
  const CompensatedReal upper = CompensatedReal(static_cast<double>(m)) + alpha.value();
  std::vector<CompensatedReal> binomial(m + 1);
  binomial[0] = 1.0;
  for (unsigned k = 1; k <= m; ++k) {
    binomial[k] = binomial[k - 1] * (upper - static_cast<double>(k - 1)) / static_cast<double>(k);
  }
  CompensatedReal sum;
  CompensatedReal power = 1.0;  // x^j / j!
  for (unsigned j = 0; j <= m; ++j) {
    const CompensatedReal term = power * binomial[m - j];
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    power = power * x / static_cast<double>(j + 1);
  }
  return sum;
}

CompensatedReal laguerre_recurrence(unsigned m, Order alpha, double x) {
  const double a = alpha.value();
  CompensatedReal previous = 1.0;
  if (m == 0) {
    return previous;
  }
  CompensatedReal current = CompensatedReal(1.0) + a - x;
  for (unsigned k = 1; k < m; ++k) {
    const CompensatedReal c1 = CompensatedReal(2.0 * k + 1.0) + a - x;
    const CompensatedReal c2 = CompensatedReal(static_cast<double>(k)) + a;
    CompensatedReal next = (c1 * current - c2 * previous) / static_cast<double>(k + 1);
    previous = current;
    current = next;
  }
  return current;
}

std::vector<CompensatedReal> laguerre_sequence(unsigned max_degree, Order alpha, double x) {
  const double a = alpha.value();
  std::vector<CompensatedReal> values(max_degree + 1);
  values[0] = 1.0;
  if (max_degree == 0) {
    return values;
  }
  values[1] = CompensatedReal(1.0) + a - x;
  for (unsigned k = 1; k < max_degree; ++k) {
    const CompensatedReal c1 = CompensatedReal(2.0 * k + 1.0) + a - x;
    const CompensatedReal c2 = CompensatedReal(static_cast<double>(k)) + a;
    values[k + 1] = (c1 * values[k] - c2 * values[k - 1]) / static_cast<double>(k + 1);
  }
  return values;
}

CompensatedReal laguerre_compensated(unsigned m, Order alpha, double x) {
  if (m <= kLaguerreExplicitMaxDegree) {
    return laguerre_explicit(m, alpha, x);
  }
  if (const auto n = alpha.negative_integer(); n && m >= static_cast<unsigned>(*n)) {
    // L_m^{-n}(x) = (-x)^n (m-n)!/m! L_{m-n}^n(x); avoids the cancellation the
    // recurrence suffers on the x^n-small values near the origin.
    const unsigned order = static_cast<unsigned>(*n);
    CompensatedReal factor = 1.0;
    for (unsigned i = 0; i < order; ++i) {
      factor = factor * (-x) / static_cast<double>(m - i);
    }
    return factor * laguerre_compensated(m - order, Order(static_cast<double>(order)), x);
  }
  return laguerre_recurrence(m, alpha, x);
}

double laguerre(unsigned m, Order alpha, double x) {
  return laguerre_compensated(m, alpha, x).value();
}

double bessel_j(Order alpha, double x, Summation summation) {
  check_argument(alpha, x);
  if (const auto n = alpha.negative_integer()) {
    const double value = bessel_j(Order(static_cast<double>(*n)), x, summation);
    return (*n % 2 == 0) ? value : -value;
  }
  return unscaled_series(alpha, x, -1.0, summation);
}

double bessel_i(Order alpha, double x, Summation summation) {
  check_argument(alpha, x);
  if (const auto n = alpha.negative_integer()) {
    return bessel_i(Order(static_cast<double>(*n)), x, summation);
  }
  return unscaled_series(alpha, x, 1.0, summation);
}

double scaled_bessel_j(Order alpha, double x) { return scaled_series(alpha, x, -1.0); }

double scaled_bessel_i(Order alpha, double x) { return scaled_series(alpha, x, 1.0); }

}  // namespace besselid
