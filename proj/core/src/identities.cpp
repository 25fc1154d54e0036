#include "besselid/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "besselid/compensated.hpp"
#include "besselid/special_functions.hpp"
#include "besselid/taylor_jets.hpp"

namespace besselid {

namespace {

constexpr double kMaxArgument = 25.0;
constexpr double kMinOrder = -6.0;
constexpr double kMaxOrder = 10.0;
// Relative convergence target handed to the quadrature next to the absolute one.
constexpr double kQuadratureRelTol = 1e-13;

struct NamedIdentity {
  IdentityId id;
  std::string_view name;
  std::string_view description;
};

constexpr std::array<NamedIdentity, 7> kNames = {{
    {IdentityId::sonine_second, "sonine-second",
     "Sonine's second integral, orders alpha, beta > -1 (params: alpha beta x y)"},
    {IdentityId::sonine_generalized, "sonine-generalized",
     "Sonine integral with anomalous sums at negative integer orders (params: alpha beta x y)"},
    {IdentityId::ij, "ij", "I-J integral identity, alpha > beta >= 0 (params: alpha beta x)"},
    {IdentityId::ij_generalized, "ij-generalized",
     "I-J identity for negative integer beta with derivative anomalous terms (params: alpha beta x)"},
    {IdentityId::pi, "pi",
     "int [r(1-r)]^-1/2 J_2nu(2 sqrt(r) x) dr = pi J_nu(x)^2; non-integer nu is a conjecture "
     "(params: nu x)"},
    {IdentityId::order_sum, "order-sum",
     "sum over Bessel order m of (-y^2/2x)^m/m! J_{alpha+m}(x) (params: alpha x y)"},
    {IdentityId::fractional_integral, "fractional-integral",
     "int_0^x y^{alpha+1}(x^2-y^2)^{beta-1} J_alpha(y) dy, beta > 0 (params: alpha beta x)"},
}};

constexpr std::array<std::pair<CheckStatus, std::string_view>, 4> kStatusNames = {{
    {CheckStatus::pass, "pass"},
    {CheckStatus::fail, "fail"},
    {CheckStatus::conjecture_pass, "conjecture-pass"},
    {CheckStatus::error, "error"},
}};

void require_argument(double value, const char* name) {
  if (!(value > 0.0 && value <= kMaxArgument)) {
    throw std::domain_error(std::string(name) + " must lie in (0, 25]");
  }
}

void require_order_range(Order order, const char* name) {
  if (!(order.value() >= kMinOrder && order.value() <= kMaxOrder)) {
    throw std::domain_error(std::string(name) + " must lie in [-6, 10]");
  }
}

Order require_beta(const IdentityParams& params) {
  if (!params.beta) {
    throw std::domain_error("beta is required");
  }
  require_order_range(*params.beta, "beta");
  return *params.beta;
}

double require_y(const IdentityParams& params) {
  if (!params.y) {
    throw std::domain_error("y is required");
  }
  require_argument(*params.y, "y");
  return *params.y;
}

// Order either > -1 or a negative integer.
void require_sonine_order(Order order, const char* name) {
  if (!(order.value() > -1.0) && !order.is_negative_integer()) {
    throw std::domain_error(std::string(name) + " must be > -1 or a negative integer");
  }
}

IdentityReport make_report(IdentityId id, const IdentityParams& params) {
  IdentityReport report;
  report.id = id;
  report.params = params;
  return report;
}

void finalize(IdentityReport& report, const Tolerances& tol, bool converged, bool conjecture) {
  report.abs_residual = std::abs(report.lhs - report.rhs);
  const double scale = std::max(std::abs(report.lhs), std::abs(report.rhs));
  report.rel_residual = report.abs_residual / std::max(scale, 1e-30);
  if (!converged) {
    report.status = CheckStatus::error;
    report.message = "quadrature did not converge (error estimate " +
                     std::to_string(report.quadrature_error) + ")";
    return;
  }
  if (!std::isfinite(report.lhs) || !std::isfinite(report.rhs)) {
    report.status = CheckStatus::error;
    report.message = "non-finite value";
    return;
  }
  const bool within = report.abs_residual <= std::max(tol.abs, tol.rel * scale);
  if (!within) {
    report.status = CheckStatus::fail;
  } else {
    report.status = conjecture ? CheckStatus::conjecture_pass : CheckStatus::pass;
  }
}

// (-1)^n
double parity_sign(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

std::string_view to_string(IdentityId id) {
  for (const auto& entry : kNames) {
    if (entry.id == id) {
      return entry.name;
    }
  }
  return "unknown";
}

std::optional<IdentityId> parse_identity_id(std::string_view name) {
  for (const auto& entry : kNames) {
    if (entry.name == name) {
      return entry.id;
    }
  }
  return std::nullopt;
}

std::string_view describe(IdentityId id) {
  for (const auto& entry : kNames) {
    if (entry.id == id) {
      return entry.description;
    }
  }
  return "";
}

std::string_view to_string(CheckStatus status) {
  for (const auto& [value, name] : kStatusNames) {
    if (value == status) {
      return name;
    }
  }
  return "error";
}

std::optional<CheckStatus> parse_check_status(std::string_view name) {
  for (const auto& [value, entry] : kStatusNames) {
    if (entry == name) {
      return value;
    }
  }
  return std::nullopt;
}

double weighted_bessel_j(Order alpha, double r, double x) {
  const double argument = std::sqrt(r) * x;
  if (const auto n = alpha.negative_integer()) {
    return parity_sign(*n) * std::pow(x, 2.0 * *n) * scaled_bessel_j(-alpha.value(), argument);
  }
  return std::pow(r, alpha.value()) * scaled_bessel_j(alpha, argument);
}

QuadratureResult sonine_integral(Order alpha, Order beta, double x, double y, double tol) {
  require_sonine_order(alpha, "alpha");
  require_sonine_order(beta, "beta");
  // For order a > -1 the weight r^a goes into the profile and the regular
  // factor is (sqrt(r) x)^{-a} J_a; for a = -n the reflected form is bounded.
  auto regular = [](Order order, double r, double argument_scale) {
    if (const auto n = order.negative_integer()) {
      return parity_sign(*n) * std::pow(argument_scale, 2.0 * *n) *
             scaled_bessel_j(-order.value(), std::sqrt(r) * argument_scale);
    }
    return scaled_bessel_j(order, std::sqrt(r) * argument_scale);
  };
  const EndpointProfile profile{alpha.is_negative_integer() ? 0.0 : alpha.value(),
                                beta.is_negative_integer() ? 0.0 : beta.value()};
  return integrate_weighted(
      profile,
      [&](double r, double omr) { return regular(alpha, r, x) * regular(beta, omr, y); }, tol,
      kQuadratureRelTol);
}

IdentityReport sonine_second(const IdentityParams& params, const Tolerances& tol) {
  IdentityReport report = make_report(IdentityId::sonine_second, params);
  const Order alpha = params.alpha;
  const Order beta = require_beta(params);
  const double x = params.x;
  const double y = require_y(params);
  require_argument(x, "x");
  require_order_range(alpha, "alpha");
  if (!(alpha.value() > -1.0) || !(beta.value() > -1.0)) {
    throw std::domain_error(
        "sonine-second needs alpha, beta > -1; use sonine-generalized for negative integers");
  }
  const QuadratureResult integral = sonine_integral(alpha, beta, x, y, tol.quadrature);
  report.lhs = integral.value;
  report.quadrature_error = integral.error_estimate;
  report.rhs = 2.0 * scaled_bessel_j(alpha.value() + beta.value() + 1.0, std::hypot(x, y));
  finalize(report, tol, integral.converged, false);
  return report;
}

IdentityReport sonine_generalized(const IdentityParams& params, const Tolerances& tol) {
  IdentityReport report = make_report(IdentityId::sonine_generalized, params);
  const Order alpha = params.alpha;
  const Order beta = require_beta(params);
  const double x = params.x;
  const double y = require_y(params);
  require_argument(x, "x");
  require_order_range(alpha, "alpha");
  require_sonine_order(alpha, "alpha");
  require_sonine_order(beta, "beta");

  const double a = alpha.value();
  const double b = beta.value();
  const QuadratureResult integral = sonine_integral(alpha, beta, x, y, tol.quadrature);
  report.lhs = integral.value;
  report.quadrature_error = integral.error_estimate;

  // sum_{j=0}^{n-1} (1/j!) (-u^2/2v)^j J_{a+b+j+1}(v), scaled by v^{-a-b-1}.
  auto anomalous_sum = [&](int n, double u, double v) {
    CompensatedReal sum;
    double coefficient = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j > 0) {
        coefficient *= -u * u / (2.0 * v) / j;
      }
      sum += coefficient * bessel_j(a + b + j + 1.0, v);
    }
    return std::pow(v, -a - b - 1.0) * sum.value();
  };
  double anomalous = 0.0;
  if (const auto n = alpha.negative_integer()) {
    anomalous += anomalous_sum(*n, x, y);
  }
  if (const auto n = beta.negative_integer()) {
    anomalous += anomalous_sum(*n, y, x);
  }
  // Same normalization as sonine_second, so the two agree when no sums apply.
  report.anomalous = 2.0 * anomalous;
  report.rhs = 2.0 * scaled_bessel_j(a + b + 1.0, std::hypot(x, y)) - report.anomalous;
  finalize(report, tol, integral.converged, false);
  return report;
}

IdentityReport ij_identity(const IdentityParams& params, const Tolerances& tol) {
  IdentityReport report = make_report(IdentityId::ij, params);
  const Order alpha = params.alpha;
  const Order beta = require_beta(params);
  const double x = params.x;
  require_argument(x, "x");
  require_order_range(alpha, "alpha");
  const double a = alpha.value();
  const double b = beta.value();
  if (!(a >= 0.0) || !(b >= 0.0)) {
    throw std::domain_error("ij needs alpha, beta >= 0");
  }
  if (!(a - b > 0.0)) {
    throw std::domain_error("ij integral diverges unless alpha - beta > 0");
  }
  // r^{(a-b)/2-1} (1-r)^b (sqrt(r) x)^{-a} I_a (sqrt(1-r) x)^{-b} J_b, times 2^b x^a.
  const double prefactor = std::exp2(b) * std::pow(x, a) * reciprocal_gamma(0.5 * (a - b));
  const EndpointProfile profile{0.5 * (a - b) - 1.0, b};
  const QuadratureResult integral = integrate_weighted(
      profile,
      [&](double r, double omr) {
        return scaled_bessel_i(alpha, std::sqrt(r) * x) * scaled_bessel_j(beta, std::sqrt(omr) * x);
      },
      tol.quadrature / std::max(std::abs(prefactor), 1e-300), kQuadratureRelTol);
  report.lhs = prefactor * integral.value;
  report.quadrature_error = std::abs(prefactor) * integral.error_estimate;
  report.rhs = bessel_j(alpha, x) * reciprocal_gamma(0.5 * (a + b) + 1.0);
  finalize(report, tol, integral.converged, false);
  return report;
}

double ij_anomalous_jet(Order alpha, int n, double x) {
  if (n < 1) {
    throw std::domain_error("ij anomalous terms need beta = -n with n >= 1");
  }
  const std::size_t order = static_cast<std::size_t>(n - 1);
  if (order > kMaxJetOrder) {
    throw std::out_of_range("ij-generalized: -beta-1 exceeds the jet order cap");
  }
  const Jet power = jet_power(Jet::variable(order, 1.0), 0.5 * n - 1.0);
  const Jet inner = power * bessel_i_of_sqrt_jet(alpha, x, order);
  CompensatedReal sum;
  double coefficient = 1.0;  // (1/p!) (-x^2/4)^p
  for (int p = 0; p < n; ++p) {
    if (p > 0) {
      coefficient *= -0.25 * x * x / p;
    }
    sum += coefficient * derivative_at_base(inner, static_cast<std::size_t>(n - 1 - p));
  }
  return sum.value();
}

double ij_anomalous_closed_form(Order alpha, int n, double x) {
  const double a = alpha.value();
  switch (n) {
    case 1:
      return bessel_i(alpha, x);
    case 2:
      return 0.25 * x * (bessel_i(a - 1.0, x) - x * bessel_i(alpha, x) + bessel_i(a + 1.0, x));
    case 3: {
      const double x2 = x * x;
      return -x2 * x / 8.0 * bessel_i(a - 1.0, x) +
             (8.0 * (a * a - 1.0) + 4.0 * (a + 1.0) * x2 + x2 * x2) / 32.0 * bessel_i(alpha, x);
    }
    default:
      throw std::domain_error("closed forms exist for beta in {-1, -2, -3} only");
  }
}

IdentityReport ij_generalized(const IdentityParams& params, const Tolerances& tol) {
  IdentityReport report = make_report(IdentityId::ij_generalized, params);
  const Order alpha = params.alpha;
  const Order beta = require_beta(params);
  const double x = params.x;
  require_argument(x, "x");
  require_order_range(alpha, "alpha");
  const auto n = beta.negative_integer();
  if (!n) {
    throw std::domain_error("ij-generalized needs a negative integer beta; use ij otherwise");
  }
  const double a = alpha.value();
  if (!(a + *n > 0.0)) {
    throw std::domain_error("ij-generalized integral diverges unless alpha - beta > 0");
  }
  // J_{-n}(sqrt(1-r) x) = (-1)^n (1-r)^{n/2} x^n (sqrt(1-r) x)^{-n} J_n cancels
  // the (1-r)^{-n/2} weight; what is left is r^{(a+n)/2-1} on the left.
  const double prefactor = parity_sign(*n) * std::exp2(-*n) * std::pow(x, 2.0 * *n + a);
  const EndpointProfile profile{0.5 * (a + *n) - 1.0, 0.0};
  const QuadratureResult integral = integrate_weighted(
      profile,
      [&](double r, double omr) {
        return scaled_bessel_i(alpha, std::sqrt(r) * x) *
               scaled_bessel_j(static_cast<double>(*n), std::sqrt(omr) * x);
      },
      tol.quadrature / std::max(std::abs(prefactor), 1e-300), kQuadratureRelTol);
  const double integral_part = prefactor * integral.value;
  report.anomalous = ij_anomalous_jet(alpha, *n, x);
  report.lhs = integral_part + report.anomalous;
  report.quadrature_error = std::abs(prefactor) * integral.error_estimate;
  report.rhs = gamma(0.5 * (a + *n)) * reciprocal_gamma(0.5 * (a - *n) + 1.0) * bessel_j(alpha, x);
  if (*n <= 3) {
    const double closed_lhs = integral_part + ij_anomalous_closed_form(alpha, *n, x);
    report.cross_check_discrepancy =
        std::max({std::abs(report.lhs - closed_lhs), std::abs(report.lhs - report.rhs),
                  std::abs(closed_lhs - report.rhs)});
  }
  finalize(report, tol, integral.converged, false);
  return report;
}

IdentityReport pi_identity(const IdentityParams& params, const Tolerances& tol) {
  IdentityReport report = make_report(IdentityId::pi, params);
  if (!params.nu) {
    throw std::domain_error("nu is required");
  }
  const Order nu = *params.nu;
  const double x = params.x;
  require_argument(x, "x");
  require_order_range(nu, "nu");
  const double v = nu.value();
  if (!(v > -0.5)) {
    throw std::domain_error("pi identity needs nu > -1/2 for convergence");
  }
  // J_{2nu}(2 sqrt(r) x) = (2x)^{2nu} r^nu (2 sqrt(r) x)^{-2nu} J_{2nu}.
  const double prefactor = std::pow(2.0 * x, 2.0 * v);
  const EndpointProfile profile{v - 0.5, -0.5};
  const Order twice = 2.0 * v;
  const QuadratureResult integral = integrate_weighted(
      profile, [&](double r, double) { return scaled_bessel_j(twice, 2.0 * std::sqrt(r) * x); },
      tol.quadrature / prefactor, kQuadratureRelTol);
  report.lhs = prefactor * integral.value;
  report.quadrature_error = prefactor * integral.error_estimate;
  const double j = bessel_j(nu, x);
  report.rhs = std::numbers::pi * j * j;
  const bool proven = nu.is_integer() && v >= 0.0;
  finalize(report, tol, integral.converged, !proven);
  return report;
}

IdentityReport order_sum_identity(const IdentityParams& params, const Tolerances& tol) {
  IdentityReport report = make_report(IdentityId::order_sum, params);
  const Order alpha = params.alpha;
  const double x = params.x;
  const double y = require_y(params);
  require_argument(x, "x");
  require_order_range(alpha, "alpha");
  const double a = alpha.value();
  const double w = y * y / (2.0 * x);

  constexpr int kMaxTerms = 200;
  constexpr int kStopCount = 5;
  CompensatedReal sum;
  double abs_sum = 0.0;
  double coefficient = 1.0;  // (-w)^m / m!
  double last = 0.0;
  int small = 0;
  bool stopped = false;
  for (int m = 0; m <= kMaxTerms; ++m) {
    if (m > 0) {
      coefficient *= -w / m;
    }
    const double term = coefficient * bessel_j(a + m, x);
    sum += term;
    abs_sum += std::abs(term);
    last = term;
    const bool decaying = m >= w && a + m > x;
    if (decaying && std::abs(term) < 1e-16 * std::abs(sum.value())) {
      if (++small == kStopCount) {
        stopped = true;
        break;
      }
    } else {
      small = 0;
    }
  }
  if (!stopped) {
    throw std::runtime_error("order-sum series did not meet its stopping rule within 200 terms");
  }
  const double scale = std::pow(x, -a);
  report.lhs = scale * sum.value();
  // Tail of a super-geometrically decaying series plus accumulated rounding of
  // the individual Bessel values.
  report.quadrature_error = scale * (2.0 * std::abs(last) + 2e-15 * abs_sum);
  report.rhs = scaled_bessel_j(alpha, std::hypot(x, y));
  finalize(report, tol, true, false);
  return report;
}

IdentityReport fractional_integral_identity(const IdentityParams& params, const Tolerances& tol) {
  IdentityReport report = make_report(IdentityId::fractional_integral, params);
  const Order alpha = params.alpha;
  const Order beta = require_beta(params);
  const double x = params.x;
  require_argument(x, "x");
  require_order_range(alpha, "alpha");
  const double a = alpha.value();
  const double b = beta.value();
  if (!(a > -1.0) || !(b > 0.0)) {
    throw std::domain_error("fractional-integral needs alpha > -1 and beta > 0");
  }
  // y = x sqrt(r): integrand becomes (x^{2a+2b}/2) r^a (1-r)^{b-1} (sqrt(r) x)^{-a} J_a.
  const double prefactor = 0.5 * std::pow(x, 2.0 * (a + b));
  const EndpointProfile profile{a, b - 1.0};
  const QuadratureResult integral = integrate_weighted(
      profile, [&](double r, double) { return scaled_bessel_j(alpha, std::sqrt(r) * x); },
      tol.quadrature / prefactor, kQuadratureRelTol);
  report.lhs = prefactor * integral.value;
  report.quadrature_error = prefactor * integral.error_estimate;
  report.rhs = std::exp2(b - 1.0) * gamma(b) * std::pow(x, a + b) * bessel_j(a + b, x);
  finalize(report, tol, integral.converged, false);
  return report;
}

IdentityReport evaluate_identity(IdentityId id, const IdentityParams& params,
                                 const Tolerances& tol) {
  try {
    switch (id) {
      case IdentityId::sonine_second:
        return sonine_second(params, tol);
      case IdentityId::sonine_generalized:
        return sonine_generalized(params, tol);
      case IdentityId::ij:
        return ij_identity(params, tol);
      case IdentityId::ij_generalized:
        return ij_generalized(params, tol);
      case IdentityId::pi:
        return pi_identity(params, tol);
      case IdentityId::order_sum:
        return order_sum_identity(params, tol);
      case IdentityId::fractional_integral:
        return fractional_integral_identity(params, tol);
    }
    throw std::invalid_argument("unknown identity");
  } catch (const std::exception& e) {
    IdentityReport report = make_report(id, params);
    report.lhs = std::nan("");
    report.rhs = std::nan("");
    report.abs_residual = std::nan("");
    report.rel_residual = std::nan("");
    report.status = CheckStatus::error;
    report.message = e.what();
    return report;
  }
}

}  // namespace besselid
