#include "besselid/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "besselid/compensated.hpp"
#include "besselid/identities.hpp"
#include "besselid/quadrature.hpp"
#include "besselid/special_functions.hpp"

namespace besselid {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kCheckQuadratureRelTol = 1e-13;
constexpr double kLimitQuadratureTol = 1e-14;

using Sequence = std::vector<CompensatedReal>;

// L_0^a(x) .. L_M^a(x). For a = -n the degrees m >= n are taken from
// L_m^{-n}(x) = (-x)^n (m-n)!/m! L_{m-n}^n(x): those values are O(x^n / m^n)
// and the plain recurrence would bury them under its absolute rounding error.
Sequence stable_sequence(long max_degree, Order alpha, double x) {
  const auto n = alpha.negative_integer();
  if (!n || max_degree < *n) {
    return laguerre_sequence(static_cast<unsigned>(max_degree), alpha, x);
  }
  Sequence values = laguerre_sequence(static_cast<unsigned>(*n - 1), alpha, x);
  values.resize(static_cast<std::size_t>(max_degree + 1));
  const Sequence reflected =
      laguerre_sequence(static_cast<unsigned>(max_degree - *n), Order(static_cast<double>(*n)), x);
  for (long m = *n; m <= max_degree; ++m) {
    CompensatedReal factor = 1.0;
    for (long i = 0; i < *n; ++i) {
      factor = factor * (-x) / static_cast<double>(m - i);
    }
    values[static_cast<std::size_t>(m)] = factor * reflected[static_cast<std::size_t>(m - *n)];
  }
  return values;
}

ExactCheckResult make_exact(const CompensatedReal& lhs, const CompensatedReal& rhs, double terms) {
  ExactCheckResult result;
  result.lhs = lhs.value();
  result.rhs = rhs.value();
  result.abs_residual = std::abs((lhs - rhs).value());
  result.scale = std::max({std::abs(result.lhs), std::abs(result.rhs), terms});
  result.rel_residual = result.scale > 0.0 ? result.abs_residual / result.scale : 0.0;
  return result;
}

void require_n_range(long n, long cap, const char* what) {
  if (n < 0 || n > cap) {
    throw std::domain_error(std::string(what) + " needs 0 <= N <= " + std::to_string(cap));
  }
}

// prod_{k<count} (a+k)/(b+k)
CompensatedReal pochhammer_ratio(double a, double b, long count) {
  CompensatedReal ratio = 1.0;
  for (long k = 0; k < count; ++k) {
    ratio = ratio * (CompensatedReal(a) + static_cast<double>(k)) /
            (CompensatedReal(b) + static_cast<double>(k));
  }
  return ratio;
}

// sum_i |C(m+a, m-i)| x^i / i!, the size of L_m^a(x) before cancellation.
double laguerre_magnitude(unsigned m, double a, double x) {
  double sum = 0.0;
  double power = 1.0;
  for (unsigned i = 0; i <= m; ++i) {
    if (i > 0) {
      power *= x / i;
    }
    sum += std::abs(generalized_binomial(m + a, m - i)) * power;
  }
  return sum;
}

double n_power(long n, double exponent) { return std::pow(static_cast<double>(n), exponent); }

// Number of leading anomalous Laguerre terms for a negative integer order.
long anomalous_count(Order order) { return order.negative_integer().value_or(0); }

void require_sonine_limit_order(Order order, const char* name) {
  if (!(order.value() > -1.0) && !order.is_negative_integer()) {
    throw std::domain_error(std::string(name) + " must be > -1 or a negative integer");
  }
}

LimitPair sonine_limit_pair(const ConvergenceParams& params, long n) {
  const Order alpha = params.alpha;
  const Order beta = params.beta.value_or(Order());
  const double y = params.y.value_or(1.0);
  require_sonine_limit_order(alpha, "alpha");
  require_sonine_limit_order(beta, "beta");
  const ScaledArguments args(params.x, y, n);
  const Sequence a = stable_sequence(n, alpha, args.big_x());
  const Sequence b = stable_sequence(n, beta, args.big_y());
  CompensatedReal sum;
  for (long m = anomalous_count(alpha); m <= n - anomalous_count(beta); ++m) {
    sum += a[static_cast<std::size_t>(m)] * b[static_cast<std::size_t>(n - m)];
  }
  const double gamma_order = alpha.value() + beta.value() + 1.0;
  const QuadratureResult integral =
      sonine_integral(alpha, beta, params.x, y, kLimitQuadratureTol);
  return {n_power(n, -gamma_order) * sum.value(),
          std::exp2(alpha.value() + beta.value()) * integral.value};
}

double identity_lhs(IdentityId id, const IdentityParams& params) {
  const IdentityReport report = evaluate_identity(id, params);
  if (report.status == CheckStatus::error) {
    throw std::domain_error(std::string(to_string(id)) + ": " + report.message);
  }
  return report.lhs;
}

LimitPair ij_limit_pair(const ConvergenceParams& params, long n) {
  const double a = params.alpha.value();
  const double b = params.beta.value_or(Order()).value();
  if (!(a >= 0.0 && b >= 0.0 && a > b)) {
    throw std::domain_error("ij-limit needs alpha > beta >= 0");
  }
  const ScaledArguments args(params.x, params.x, n);
  const double big_x = args.big_x();
  const Sequence left = stable_sequence(n, params.alpha, -big_x);
  const Sequence right = stable_sequence(n, b, big_x);
  const double c = 0.5 * (a - b);
  CompensatedReal ratio = 1.0;
  CompensatedReal sum;
  for (long m = 0; m <= n; ++m) {
    if (m > 0) {
      ratio = ratio * (CompensatedReal(c) + static_cast<double>(m - 1)) /
              (CompensatedReal(a + 1.0) + static_cast<double>(m - 1));
    }
    sum += ratio * left[static_cast<std::size_t>(m)] * right[static_cast<std::size_t>(n - m)];
  }
  const double normalization = std::exp2(a) * std::pow(params.x, -a) * gamma(a + 1.0);
  IdentityParams ij;
  ij.alpha = params.alpha;
  ij.beta = b;
  ij.x = params.x;
  return {n_power(n, -0.5 * (a + b)) * sum.value() / normalization,
          identity_lhs(IdentityId::ij, ij)};
}

LimitPair pi_limit_pair(const ConvergenceParams& params, long n) {
  if (!params.nu || !params.nu->is_integer() || params.nu->value() < 0.0) {
    throw std::domain_error("pi-limit needs an integer nu >= 0");
  }
  const int nu = static_cast<int>(params.nu->value());
  const double x = params.x;
  const ScaledArguments args(x, x, n);
  const Sequence values = stable_sequence(2 * n + 2 * nu, -2.0 * nu, 2.0 * args.big_x());
  CompensatedReal coefficient = 1.0;
  CompensatedReal sum;
  for (long m = 0; m <= n; ++m) {
    if (m > 0) {
      const double k = static_cast<double>(m - 1);
      coefficient = coefficient * ((k - n) * (nu + 0.5 + k)) / ((k + 1.0) * (0.5 - n + k));
    }
    sum += coefficient * values[static_cast<std::size_t>(2 * m + 2 * nu)];
  }
  const double half_poch = pochhammer(0.5, static_cast<unsigned>(nu));
  const double normalization =
      std::sqrt(std::numbers::pi) * half_poch * std::exp2(2.0 * nu) * std::pow(x, -2.0 * nu);
  IdentityParams pi;
  pi.nu = Order(static_cast<double>(nu));
  pi.x = x;
  return {n_power(n, nu - 0.5) * sum.value() * normalization, identity_lhs(IdentityId::pi, pi)};
}

LimitPair fractional_limit_pair(const ConvergenceParams& params, long n) {
  const double a = params.alpha.value();
  const double b = params.beta.value_or(Order(1.0)).value();
  if (!(a > -1.0 && b > 0.0)) {
    throw std::domain_error("fractional-limit needs alpha > -1 and beta > 0");
  }
  const ScaledArguments args(params.x, params.x, n);
  const double big_x = args.big_x();
  const CompensatedReal ratio = pochhammer_ratio(a + 1.0, a + b + 1.0, n) * gamma(a + 1.0) *
                                reciprocal_gamma(a + b + 1.0);
  const double finite = n_power(n, b) * std::exp2(a + 2.0 * b - 1.0) * gamma(b) * ratio.value() *
                        std::pow(big_x, a + b) * laguerre(static_cast<unsigned>(n), a + b, big_x);
  IdentityParams fractional;
  fractional.alpha = params.alpha;
  fractional.beta = b;
  fractional.x = params.x;
  return {finite, identity_lhs(IdentityId::fractional_integral, fractional)};
}

constexpr std::array<std::pair<FitStatus, std::string_view>, 4> kFitStatusNames = {{
    {FitStatus::fitted, "fitted"},
    {FitStatus::exact, "exact"},
    {FitStatus::degenerate, "degenerate"},
    {FitStatus::unavailable, "unavailable"},
}};

constexpr std::array<std::pair<ConvergenceTarget, std::string_view>, 9> kTargetNames = {{
    {ConvergenceTarget::laguerre_limit, "laguerre-limit"},
    {ConvergenceTarget::anomalous_block, "anomalous-block"},
    {ConvergenceTarget::laguerre_sum, "laguerre-sum"},
    {ConvergenceTarget::sonine_limit, "sonine-limit"},
    {ConvergenceTarget::ij_limit, "ij-limit"},
    {ConvergenceTarget::pi_limit, "pi-limit"},
    {ConvergenceTarget::fractional_limit, "fractional-limit"},
    {ConvergenceTarget::derivative_exp, "derivative-exp"},
    {ConvergenceTarget::derivative_ij, "derivative-ij"},
}};

}  // namespace

ScaledArguments::ScaledArguments(double x, double y, long n) : x_(x), y_(y), n_(n) {
  if (n < 0) {
    throw std::domain_error("N must be non-negative");
  }
}

LimitPair laguerre_limit_pair(Order alpha, double x, double r, long n) {
  if (!(r > 0.0 && r <= 1.0) || !(x > 0.0) || n < 1) {
    throw std::domain_error("laguerre limit needs 0 < r <= 1, x > 0 and N >= 1");
  }
  const long m = static_cast<long>(std::floor(r * static_cast<double>(n) + 0.5));
  if (m < 1) {
    throw std::domain_error("rN must round to a positive integer");
  }
  const double r_used = static_cast<double>(m) / static_cast<double>(n);
  const ScaledArguments args(x, x, n);
  const double finite =
      n_power(n, -alpha.value()) * laguerre(static_cast<unsigned>(m), alpha, args.big_x());
  const double limit = std::exp2(alpha.value()) * weighted_bessel_j(alpha, r_used, x);
  return {finite, limit};
}

double laguerre_limit_residual(Order alpha, double x, double r, long n) {
  const LimitPair pair = laguerre_limit_pair(alpha, x, r, n);
  return std::abs(pair.finite - pair.limit);
}

ExactCheckResult laguerre_findiff_check(unsigned m, unsigned k, Order alpha, double x) {
  auto value = [&](long i) { return laguerre_compensated(static_cast<unsigned>(i), alpha, x); };
  const CompensatedReal lhs = finite_difference(value, m, k);
  double terms = 0.0;
  double binomial = 1.0;
  for (unsigned i = 0; i <= k; ++i) {
    if (i > 0) {
      binomial = binomial * static_cast<double>(k - i + 1) / static_cast<double>(i);
    }
    terms += binomial * std::abs(value(m + i).value());
  }
  const CompensatedReal rhs = laguerre_compensated(m + k, alpha.value() - k, x);
  return make_exact(lhs, rhs, terms);
}

ExactCheckResult laguerre_sum_check(Order alpha, Order beta, double x, double y, long n) {
  require_n_range(n, kLaguerreSumMaxN, "laguerre-sum");
  const ScaledArguments args(x, y, n);
  const Sequence a = stable_sequence(n, alpha, args.big_x());
  const Sequence b = stable_sequence(n, beta, args.big_y());
  CompensatedReal lhs;
  double terms = 0.0;
  for (long m = 0; m <= n; ++m) {
    const CompensatedReal term = a[static_cast<std::size_t>(m)] * b[static_cast<std::size_t>(n - m)];
    lhs += term;
    terms += std::abs(term.value());
  }
  const CompensatedReal rhs = laguerre_compensated(static_cast<unsigned>(n),
                                                   alpha.value() + beta.value() + 1.0,
                                                   args.big_x() + args.big_y());
  return make_exact(lhs, rhs, terms);
}

ExactCheckResult hansen_ratio_sum_check(Order alpha, Order beta, double x, long n) {
  require_n_range(n, kHansenMaxN, "hansen-ratio-sum");
  if (alpha.is_negative_integer()) {
    throw std::domain_error("hansen-ratio-sum: (alpha+1)_m vanishes for negative integer alpha");
  }
  const double a = alpha.value();
  const double b = beta.value();
  const ScaledArguments args(x, x, n);
  const Sequence left = stable_sequence(n, alpha, -args.big_x());
  const Sequence right = stable_sequence(n, beta, args.big_x());
  const double c = 0.5 * (a - b);
  CompensatedReal ratio = 1.0;
  CompensatedReal lhs;
  double terms = 0.0;
  for (long m = 0; m <= n; ++m) {
    if (m > 0) {
      ratio = ratio * (CompensatedReal(c) + static_cast<double>(m - 1)) /
              (CompensatedReal(a + 1.0) + static_cast<double>(m - 1));
    }
    const CompensatedReal term =
        ratio * left[static_cast<std::size_t>(m)] * right[static_cast<std::size_t>(n - m)];
    lhs += term;
    terms += std::abs(term.value());
  }
  const CompensatedReal rhs = pochhammer_ratio(0.5 * (a + b) + 1.0, a + 1.0, n) *
                              laguerre_compensated(static_cast<unsigned>(n), alpha, args.big_x());
  return make_exact(lhs, rhs, terms);
}

ExactCheckResult squared_laguerre_sum_check(int nu, double x, long n) {
  require_n_range(n, kHansenMaxN, "squared-laguerre-sum");
  if (nu < 0 || nu > 10) {
    throw std::domain_error("squared-laguerre-sum needs an integer 0 <= nu <= 10");
  }
  const ScaledArguments args(x, x, n);
  const double big_x = args.big_x();
  const Sequence values = stable_sequence(2 * n + 2 * nu, -2.0 * nu, 2.0 * big_x);
  CompensatedReal coefficient = 1.0;
  CompensatedReal lhs;
  double terms = 0.0;
  for (long m = 0; m <= n; ++m) {
    if (m > 0) {
      const double k = static_cast<double>(m - 1);
      coefficient = coefficient * ((k - n) * (nu + 0.5 + k)) / ((k + 1.0) * (0.5 - n + k));
    }
    const CompensatedReal term = coefficient * values[static_cast<std::size_t>(2 * m + 2 * nu)];
    lhs += term;
    terms += std::abs(term.value());
  }
  // (N+nu)! / ((1/2)_N (1/2)_nu)
  CompensatedReal prefactor = 1.0;
  for (long k = 1; k <= n + nu; ++k) {
    prefactor *= static_cast<double>(k);
  }
  for (long j = 0; j < n; ++j) {
    prefactor /= 0.5 + static_cast<double>(j);
  }
  for (int j = 0; j < nu; ++j) {
    prefactor /= 0.5 + static_cast<double>(j);
  }
  const CompensatedReal laguerre_value =
      laguerre_compensated(static_cast<unsigned>(n + nu), -static_cast<double>(nu), big_x);
  return make_exact(lhs, prefactor * laguerre_value * laguerre_value, terms);
}

ExactCheckResult laguerre_fractional_integral_check(Order alpha, double beta, double x, long n) {
  require_n_range(n, kFractionalCheckMaxN, "laguerre-fractional-integral");
  const double a = alpha.value();
  if (!(a > -1.0) || !(beta > 0.0)) {
    throw std::domain_error("laguerre-fractional-integral needs alpha > -1 and beta > 0");
  }
  const ScaledArguments args(x, x, n);
  const double big_x = args.big_x();
  const unsigned degree = static_cast<unsigned>(n);
  // Y = X s maps the integral onto [0, 1] with weight s^a (1-s)^{b-1}.
  const QuadratureResult integral = integrate_weighted(
      {a, beta - 1.0}, [&](double s, double) { return laguerre(degree, alpha, big_x * s); }, 0.0,
      kCheckQuadratureRelTol);
  const double power = std::pow(big_x, a + beta);
  const CompensatedReal lhs = CompensatedReal(integral.value) * power;
  const CompensatedReal rhs = CompensatedReal(gamma(beta)) * gamma(n + a + 1.0) *
                              reciprocal_gamma(n + a + beta + 1.0) * power *
                              laguerre_compensated(degree, a + beta, big_x);
  const double rhs_factor = gamma(beta) * gamma(n + a + 1.0) * reciprocal_gamma(n + a + beta + 1.0);
  const double terms =
      power * std::max(std::exp(std::lgamma(a + 1.0) + std::lgamma(beta) - std::lgamma(a + beta + 1.0)) *
                           laguerre_magnitude(degree, a, big_x),
                       std::abs(rhs_factor) * laguerre_magnitude(degree, a + beta, big_x));
  ExactCheckResult result = make_exact(lhs, rhs, terms);
  result.error_estimate = power * integral.error_estimate;
  if (!integral.converged) {
    throw std::runtime_error("laguerre-fractional-integral: quadrature did not converge");
  }
  return result;
}

ExactCheckResult laguerre_product_integral_check(Order alpha, Order beta, unsigned m, unsigned n,
                                                 long big_n) {
  const double a = alpha.value();
  const double b = beta.value();
  if (!(a > -1.0) || !(b > -1.0)) {
    throw std::domain_error("laguerre-product-integral converges only for alpha, beta > -1");
  }
  if (m > kProductIntegralMaxDegree || n > kProductIntegralMaxDegree || big_n < 1) {
    throw std::domain_error("laguerre-product-integral needs m, n <= 24 and N >= 1");
  }
  const double scale = 1.0 / (4.0 * static_cast<double>(big_n));
  const QuadratureResult integral = integrate_weighted(
      {a, b},
      [&](double r, double omr) {
        return laguerre(m, alpha, r * scale) * laguerre(n, beta, omr * scale);
      },
      0.0, kCheckQuadratureRelTol);
  std::uint64_t binomial = 1;
  for (unsigned i = 0; i < m; ++i) {
    binomial = binomial * (m + n - i) / (i + 1);
  }
  const CompensatedReal prefactor = CompensatedReal(static_cast<double>(binomial)) *
                                    gamma(a + m + 1.0) * gamma(b + n + 1.0) *
                                    reciprocal_gamma(a + b + m + n + 2.0);
  const CompensatedReal rhs = prefactor * laguerre_compensated(m + n, a + b + 1.0, scale);
  const double terms = std::max(
      std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0)) *
          laguerre_magnitude(m, a, scale) * laguerre_magnitude(n, b, scale),
      std::abs(prefactor.value()) * laguerre_magnitude(m + n, a + b + 1.0, scale));
  ExactCheckResult result = make_exact(integral.value, rhs, terms);
  result.error_estimate = integral.error_estimate;
  if (!integral.converged) {
    throw std::runtime_error("laguerre-product-integral: quadrature did not converge");
  }
  return result;
}

LimitPair anomalous_block_limit(Order alpha, Order beta, double x, double y, long n) {
  const auto count = alpha.negative_integer();
  if (!count) {
    throw std::domain_error("anomalous block needs a negative integer alpha");
  }
  if (n < *count || !(x > 0.0) || !(y > 0.0)) {
    throw std::domain_error("anomalous block needs N >= -alpha and x, y > 0");
  }
  const ScaledArguments args(x, y, n);
  const double a = alpha.value();
  const double b = beta.value();
  CompensatedReal block;
  for (int m = 0; m < *count; ++m) {
    block += laguerre_compensated(static_cast<unsigned>(m), alpha, args.big_x()) *
             laguerre_compensated(static_cast<unsigned>(n - m), beta, args.big_y());
  }
  CompensatedReal sum;
  double coefficient = 1.0;
  for (int j = 0; j < *count; ++j) {
    if (j > 0) {
      coefficient *= -x * x / (2.0 * y) / j;
    }
    sum += coefficient * bessel_j(a + b + j + 1.0, y);
  }
  const double limit = std::exp2(a + b + 1.0) * std::pow(y, -a - b - 1.0) * sum.value();
  return {n_power(n, -a - b - 1.0) * block.value(), limit};
}

AsymptoticFamily exp_family() {
  AsymptoticFamily family;
  family.name = "exp";
  family.evaluate = [](long m, double w) { return std::exp(static_cast<double>(m) * std::log1p(w)); };
  family.limit_jet = [](double z, std::size_t order) {
    Jet argument = Jet::variable(order, 1.0);
    argument *= z;
    return jet_exp(argument);
  };
  return family;
}

AsymptoticFamily ij_bracket_family(Order alpha, Order beta) {
  const double a = alpha.value();
  const double b = beta.value();
  const double c = 0.5 * (a - b);
  if (!(c > 0.0)) {
    throw std::domain_error("ij bracket needs alpha - beta > 0");
  }
  if (alpha.is_negative_integer()) {
    throw std::domain_error("ij bracket needs (alpha+1)_N nonzero");
  }
  AsymptoticFamily family;
  family.name = "ij-bracket";
  const double normalization = gamma(c) * reciprocal_gamma(a + 1.0);
  family.evaluate = [=](long m, double w) {
    const CompensatedReal ratio = pochhammer_ratio(c, a + 1.0, m);
    return std::pow(w, c - 1.0) * normalization *
           (ratio * laguerre_compensated(static_cast<unsigned>(m), alpha, -w)).value();
  };
  family.limit_jet = [=](double z, std::size_t order) {
    const double exponent = -0.5 * b - 1.0;
    Jet result = jet_power(Jet::variable(order, 1.0), exponent) *
                 bessel_i_of_sqrt_jet(alpha, 2.0 * std::sqrt(z), order);
    result *= std::pow(z, exponent);
    return result;
  };
  return family;
}

LimitPair appendix_findiff_limit(const AsymptoticFamily& family, unsigned p, double z, long n) {
  if (p > kMaxAppendixOrder) {
    throw std::out_of_range("finite-difference limits support p <= 4");
  }
  if (n < 1) {
    throw std::domain_error("finite-difference limits need N >= 1");
  }
  const double w = z / static_cast<double>(n);
  const double difference =
      finite_difference([&](long l) { return family.evaluate(n + l, w); }, 0, p);
  const double finite = n_power(n, p) * difference;
  const double limit = derivative_at_base(family.limit_jet(z, p), p);
  return {finite, limit};
}

std::string_view to_string(FitStatus status) {
  for (const auto& [value, name] : kFitStatusNames) {
    if (value == status) {
      return name;
    }
  }
  return "unavailable";
}

std::optional<FitStatus> parse_fit_status(std::string_view name) {
  for (const auto& [value, entry] : kFitStatusNames) {
    if (entry == name) {
      return value;
    }
  }
  return std::nullopt;
}

std::string ConvergenceTable::to_csv() const {
  std::string out = "N,finite_value,limit_value,abs_error\n";
  char line[256];
  for (const auto& entry : entries) {
    std::snprintf(line, sizeof line, "%ld,%.17g,%.17g,%.17g\n", entry.n, entry.finite_value,
                  entry.limit_value, entry.abs_error);
    out += line;
  }
  std::snprintf(line, sizeof line, "fitted_rate,%.17g\n", fitted_rate);
  out += line;
  return out;
}

ConvergenceTable fit_convergence(std::vector<ConvergenceEntry> entries,
                                 const std::vector<double>& scales) {
  if (entries.size() < 3) {
    throw std::invalid_argument("a convergence table needs at least 3 entries");
  }
  if (scales.size() != entries.size()) {
    throw std::invalid_argument("one scale per convergence entry is required");
  }
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].n <= entries[i - 1].n) {
      throw std::invalid_argument("convergence N values must be strictly increasing");
    }
  }
  ConvergenceTable table;
  table.entries = std::move(entries);
  std::vector<std::pair<double, double>> points;
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const double error = table.entries[i].abs_error;
    if (error > 64.0 * kEps * scales[i]) {
      points.emplace_back(std::log(static_cast<double>(table.entries[i].n)), std::log(error));
    }
  }
  if (points.empty()) {
    table.fit_status = FitStatus::exact;
    table.fitted_rate = -std::numeric_limits<double>::infinity();
  } else if (points.size() < 3) {
    table.fit_status = FitStatus::unavailable;
    table.fitted_rate = std::nan("");
  } else if (points.size() < table.entries.size()) {
    table.fit_status = FitStatus::degenerate;
    table.fitted_rate = -std::numeric_limits<double>::infinity();
  } else {
    double mean_u = 0.0;
    double mean_v = 0.0;
    for (const auto& [u, v] : points) {
      mean_u += u;
      mean_v += v;
    }
    mean_u /= static_cast<double>(points.size());
    mean_v /= static_cast<double>(points.size());
    double covariance = 0.0;
    double variance = 0.0;
    for (const auto& [u, v] : points) {
      covariance += (u - mean_u) * (v - mean_v);
      variance += (u - mean_u) * (u - mean_u);
    }
    table.fit_status = FitStatus::fitted;
    table.fitted_rate = covariance / variance;
  }
  return table;
}

std::string_view to_string(ConvergenceTarget target) {
  for (const auto& [value, name] : kTargetNames) {
    if (value == target) {
      return name;
    }
  }
  return "unknown";
}

std::optional<ConvergenceTarget> parse_convergence_target(std::string_view name) {
  for (const auto& [value, entry] : kTargetNames) {
    if (entry == name) {
      return value;
    }
  }
  return std::nullopt;
}

TargetSample sample_target(ConvergenceTarget target, const ConvergenceParams& params, long n) {
  TargetSample sample;
  switch (target) {
    case ConvergenceTarget::laguerre_limit:
      sample.pair = laguerre_limit_pair(params.alpha, params.x, params.r, n);
      break;
    case ConvergenceTarget::anomalous_block:
      sample.pair = anomalous_block_limit(params.alpha, params.beta.value_or(Order()), params.x,
                                          params.y.value_or(1.0), n);
      break;
    case ConvergenceTarget::laguerre_sum: {
      const ExactCheckResult check = laguerre_sum_check(
          params.alpha, params.beta.value_or(Order()), params.x, params.y.value_or(1.0), n);
      sample.pair = {check.lhs, check.rhs};
      sample.scale = check.scale;
      return sample;
    }
    case ConvergenceTarget::sonine_limit:
      sample.pair = sonine_limit_pair(params, n);
      break;
    case ConvergenceTarget::ij_limit:
      sample.pair = ij_limit_pair(params, n);
      break;
    case ConvergenceTarget::pi_limit:
      sample.pair = pi_limit_pair(params, n);
      break;
    case ConvergenceTarget::fractional_limit:
      sample.pair = fractional_limit_pair(params, n);
      break;
    case ConvergenceTarget::derivative_exp:
      sample.pair = appendix_findiff_limit(exp_family(), params.p, params.z, n);
      break;
    case ConvergenceTarget::derivative_ij:
      sample.pair =
          appendix_findiff_limit(ij_bracket_family(params.alpha, params.beta.value_or(Order())),
                                 params.p, 0.25 * params.x * params.x, n);
      break;
  }
  sample.scale = std::max(std::abs(sample.pair.finite), std::abs(sample.pair.limit));
  return sample;
}

ConvergenceTable convergence_study(ConvergenceTarget target, const std::vector<long>& n_list,
                                   const ConvergenceParams& params) {
  std::vector<ConvergenceEntry> entries;
  std::vector<double> scales;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (i > 0 && n_list[i] <= n_list[i - 1]) {
      throw std::invalid_argument("convergence N values must be strictly increasing");
    }
  }
  for (const long n : n_list) {
    const TargetSample sample = sample_target(target, params, n);
    entries.push_back(
        {n, sample.pair.finite, sample.pair.limit, std::abs(sample.pair.finite - sample.pair.limit)});
    scales.push_back(sample.scale);
  }
  return fit_convergence(std::move(entries), scales);
}

SonineJump sonine_jump_at_minus_one(Order beta, double x, double y) {
  if (!(beta.value() > -1.0)) {
    throw std::domain_error("the jump is measured for beta > -1");
  }
  // I(-1 + eps) is analytic in eps; extrapolate to eps = 0 with Neville's scheme.
  constexpr std::array<double, 4> kSteps = {1e-3, 5e-4, 2.5e-4, 1.25e-4};
  std::array<double, 4> table{};
  for (std::size_t i = 0; i < kSteps.size(); ++i) {
    table[i] = sonine_integral(-1.0 + kSteps[i], beta, x, y, kLimitQuadratureTol).value;
  }
  for (std::size_t level = 1; level < kSteps.size(); ++level) {
    for (std::size_t i = kSteps.size() - 1; i >= level; --i) {
      const double hi = kSteps[i - level];
      const double lo = kSteps[i];
      table[i] = (hi * table[i] - lo * table[i - 1]) / (hi - lo);
    }
  }
  const double at_minus_one = sonine_integral(-1.0, beta, x, y, kLimitQuadratureTol).value;
  SonineJump jump;
  jump.extrapolated = table.back() - at_minus_one;
  jump.predicted = 2.0 * std::pow(y, -beta.value()) * bessel_j(beta, y);
  return jump;
}

}  // namespace besselid
